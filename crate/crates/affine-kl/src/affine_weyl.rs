//! The affine Weyl group `W^ = Q^v ⋊ W`: exact group arithmetic, actions on
//! the affine Cartan, weights and affine roots, lengths and reduced words,
//! minimal coset representatives `w_gamma`, and the subregular-cell elements
//! `w_i` with their coweights `nu_i`.
//!
//! Elements are kept in the canonical normal form `w = t_gamma * u` with
//! `gamma` in the coroot lattice and `u` in the finite Weyl group; the form
//! is unique, so equality of elements is equality of the pair. For types D/E
//! the finite part is an integer matrix on `Q^v`; for type A it is a
//! permutation, and the whole element also embeds into the group of periodic
//! permutations of `Z` (see [`PeriodicPermutation`]).

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::root_data::{AffineRoot, AffineWeight, CartanDatum, HhatVector, TypeLabel};
use crate::{Error, Result};

/// Finite Weyl group element: an integer matrix acting on coroot
/// coordinates (types D/E) or a permutation of `{1..n}` (type A).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FinitePart {
    Matrix(Vec<i64>),
    Perm(Vec<u32>),
}

impl FinitePart {
    pub fn identity(datum: &CartanDatum) -> Self {
        match datum.label {
            TypeLabel::A(n) => FinitePart::Perm((1..=n as u32 + 1).collect()),
            _ => {
                let r = datum.rank;
                let mut m = vec![0i64; r * r];
                for i in 0..r {
                    m[i * r + i] = 1;
                }
                FinitePart::Matrix(m)
            }
        }
    }

    pub fn is_identity(&self, datum: &CartanDatum) -> bool {
        self == &FinitePart::identity(datum)
    }

    /// Finite simple reflection `s_i`, `1 <= i <= rank`.
    pub fn simple(datum: &CartanDatum, i: usize) -> Self {
        assert!(i >= 1 && i <= datum.rank);
        match datum.label {
            TypeLabel::A(_) => {
                let FinitePart::Perm(mut p) = FinitePart::identity(datum) else {
                    unreachable!()
                };
                p.swap(i - 1, i);
                FinitePart::Perm(p)
            }
            _ => {
                let r = datum.rank;
                let FinitePart::Matrix(mut m) = FinitePart::identity(datum) else {
                    unreachable!()
                };
                for j in 0..r {
                    m[(i - 1) * r + j] -= datum.cartan[i - 1][j];
                }
                FinitePart::Matrix(m)
            }
        }
    }

    /// Reflection in the highest root `theta`.
    pub fn theta_reflection(datum: &CartanDatum) -> Self {
        match datum.label {
            TypeLabel::A(n) => {
                let FinitePart::Perm(mut p) = FinitePart::identity(datum) else {
                    unreachable!()
                };
                p.swap(0, n);
                FinitePart::Perm(p)
            }
            _ => {
                let r = datum.rank;
                let FinitePart::Matrix(mut m) = FinitePart::identity(datum) else {
                    unreachable!()
                };
                let a_theta: Vec<i64> = (0..r)
                    .map(|i| datum.simple_pairing(i + 1, &datum.theta))
                    .collect();
                for k in 0..r {
                    for j in 0..r {
                        m[k * r + j] -= datum.theta[k] * a_theta[j];
                    }
                }
                FinitePart::Matrix(m)
            }
        }
    }

    /// Apply to a vector in coroot coordinates.
    pub fn apply(&self, datum: &CartanDatum, x: &[i64]) -> Vec<i64> {
        match self {
            FinitePart::Matrix(m) => {
                let r = datum.rank;
                (0..r)
                    .map(|i| (0..r).map(|j| m[i * r + j] * x[j]).sum())
                    .collect()
            }
            FinitePart::Perm(p) => {
                let eps = datum.coroot_to_eps(x).expect("type A datum");
                let mut out = vec![0i64; eps.len()];
                for (k, &img) in p.iter().enumerate() {
                    out[img as usize - 1] = eps[k];
                }
                datum.eps_to_coroot(&out).expect("sum-zero image")
            }
        }
    }

    /// Composition `self ∘ other`.
    pub fn compose(&self, datum: &CartanDatum, other: &FinitePart) -> FinitePart {
        match (self, other) {
            (FinitePart::Matrix(a), FinitePart::Matrix(b)) => {
                let r = datum.rank;
                let mut m = vec![0i64; r * r];
                for i in 0..r {
                    for k in 0..r {
                        let aik = a[i * r + k];
                        if aik == 0 {
                            continue;
                        }
                        for j in 0..r {
                            m[i * r + j] += aik * b[k * r + j];
                        }
                    }
                }
                FinitePart::Matrix(m)
            }
            (FinitePart::Perm(a), FinitePart::Perm(b)) => {
                FinitePart::Perm(b.iter().map(|&k| a[k as usize - 1]).collect())
            }
            _ => unreachable!("mixed finite-part representations"),
        }
    }

    pub fn inverse(&self, datum: &CartanDatum) -> FinitePart {
        match self {
            FinitePart::Perm(p) => {
                let mut inv = vec![0u32; p.len()];
                for (k, &img) in p.iter().enumerate() {
                    inv[img as usize - 1] = k as u32 + 1;
                }
                FinitePart::Perm(inv)
            }
            FinitePart::Matrix(_) => self.inverse_by_elimination(datum),
        }
    }

    #[allow(clippy::needless_range_loop)]
    fn inverse_by_elimination(&self, datum: &CartanDatum) -> FinitePart {
        let FinitePart::Matrix(m) = self else {
            unreachable!()
        };
        let r = datum.rank;
        // Two-phase augmented integer elimination. Forward: reduce to upper
        // triangular using row operations among rows >= col only (Euclidean
        // swaps stay below the pivot, so cleared columns are never touched).
        // A unimodular integer triangular matrix has +-1 diagonal, so the
        // back-substitution is exact.
        let mut a: Vec<Vec<i64>> = (0..r)
            .map(|i| {
                let mut row: Vec<i64> = m[i * r..(i + 1) * r].to_vec();
                let mut aug = vec![0i64; r];
                aug[i] = 1;
                row.extend(aug);
                row
            })
            .collect();
        for col in 0..r {
            loop {
                // Pivot on the minimal nonzero entry so the Euclidean
                // remainders strictly shrink.
                let piv = (col..r)
                    .filter(|&i| a[i][col] != 0)
                    .min_by_key(|&i| a[i][col].unsigned_abs())
                    .expect("invertible finite part");
                a.swap(col, piv);
                let mut dirty = false;
                for i in col + 1..r {
                    let q = a[i][col] / a[col][col];
                    if q != 0 {
                        for j in col..2 * r {
                            a[i][j] -= q * a[col][j];
                        }
                    }
                    dirty |= a[i][col] != 0;
                }
                if !dirty {
                    break;
                }
            }
        }
        for col in (0..r).rev() {
            let p = a[col][col];
            assert!(p == 1 || p == -1, "non-unimodular finite part");
            if p == -1 {
                for j in 0..2 * r {
                    a[col][j] = -a[col][j];
                }
            }
            for i in 0..col {
                let q = a[i][col];
                if q != 0 {
                    for j in col..2 * r {
                        a[i][j] -= q * a[col][j];
                    }
                }
            }
        }
        let mut inv = vec![0i64; r * r];
        for i in 0..r {
            inv[i * r..(i + 1) * r].copy_from_slice(&a[i][r..2 * r]);
        }
        FinitePart::Matrix(inv)
    }

    /// Determinant of the action on `h` (equals the sign character).
    #[allow(clippy::needless_range_loop)]
    pub fn det(&self, datum: &CartanDatum) -> i64 {
        match self {
            FinitePart::Perm(p) => {
                let mut sign = 1i64;
                for i in 0..p.len() {
                    for j in i + 1..p.len() {
                        if p[i] > p[j] {
                            sign = -sign;
                        }
                    }
                }
                sign
            }
            FinitePart::Matrix(m) => {
                let r = datum.rank;
                let mut a: Vec<Vec<i64>> = (0..r).map(|i| m[i * r..(i + 1) * r].to_vec()).collect();
                let mut det = 1i64;
                for col in 0..r {
                    let Some(piv) = (col..r).find(|&i| a[i][col] != 0) else {
                        return 0;
                    };
                    if piv != col {
                        a.swap(col, piv);
                        det = -det;
                    }
                    for i in col + 1..r {
                        while a[i][col] != 0 {
                            let q = a[i][col] / a[col][col];
                            if q != 0 {
                                for j in col..r {
                                    a[i][j] -= q * a[col][j];
                                }
                            }
                            if a[i][col] != 0 {
                                a.swap(i, col);
                                det = -det;
                            }
                        }
                    }
                    det *= a[col][col];
                }
                det
            }
        }
    }

    /// Flat integer serialization: matrix rows or the permutation window.
    pub fn to_flat(&self) -> Vec<i64> {
        match self {
            FinitePart::Matrix(m) => m.clone(),
            FinitePart::Perm(p) => p.iter().map(|&x| x as i64).collect(),
        }
    }
}

/// Element of the affine Weyl group in the canonical form `t_gamma * u`.
#[derive(Clone, Debug)]
pub struct AffineWeylElement {
    pub datum: Arc<CartanDatum>,
    pub gamma: Vec<i64>,
    pub u: FinitePart,
}

impl PartialEq for AffineWeylElement {
    fn eq(&self, other: &Self) -> bool {
        self.datum.label == other.datum.label && self.gamma == other.gamma && self.u == other.u
    }
}
impl Eq for AffineWeylElement {}

impl PartialOrd for AffineWeylElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for AffineWeylElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.gamma
            .cmp(&other.gamma)
            .then_with(|| self.u.cmp(&other.u))
    }
}
impl Hash for AffineWeylElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.gamma.hash(state);
        self.u.hash(state);
    }
}

impl AffineWeylElement {
    pub fn identity(datum: &Arc<CartanDatum>) -> Self {
        AffineWeylElement {
            datum: datum.clone(),
            gamma: vec![0; datum.rank],
            u: FinitePart::identity(datum),
        }
    }

    /// Pure translation `t_gamma`.
    pub fn translation(datum: &Arc<CartanDatum>, gamma: Vec<i64>) -> Self {
        assert_eq!(gamma.len(), datum.rank);
        AffineWeylElement {
            datum: datum.clone(),
            gamma,
            u: FinitePart::identity(datum),
        }
    }

    /// Simple reflection for an affine node in `0..=rank`;
    /// `s_0 = s_theta * t_{-theta} = t_theta * s_theta`.
    pub fn simple(datum: &Arc<CartanDatum>, i: usize) -> Self {
        if i == 0 {
            AffineWeylElement {
                datum: datum.clone(),
                gamma: datum.theta.clone(),
                u: FinitePart::theta_reflection(datum),
            }
        } else {
            AffineWeylElement {
                datum: datum.clone(),
                gamma: vec![0; datum.rank],
                u: FinitePart::simple(datum, i),
            }
        }
    }

    /// Product of simple reflections, left to right.
    pub fn from_word(datum: &Arc<CartanDatum>, word: &[usize]) -> Self {
        let mut w = AffineWeylElement::identity(datum);
        for &i in word {
            w = w
                .multiply(&AffineWeylElement::simple(datum, i))
                .expect("same datum");
        }
        w
    }

    pub fn is_identity(&self) -> bool {
        self.gamma.iter().all(|&c| c == 0) && self.u.is_identity(&self.datum)
    }

    /// Group multiplication `(t_a u)(t_b v) = t_{a + u(b)} (uv)`.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        if self.datum.label != other.datum.label {
            return Err(Error::MismatchedDatum(
                self.datum.label.to_string(),
                other.datum.label.to_string(),
            ));
        }
        let moved = self.u.apply(&self.datum, &other.gamma);
        let gamma = self.gamma.iter().zip(&moved).map(|(a, b)| a + b).collect();
        Ok(AffineWeylElement {
            datum: self.datum.clone(),
            gamma,
            u: self.u.compose(&self.datum, &other.u),
        })
    }

    pub fn inverse(&self) -> Self {
        let u_inv = self.u.inverse(&self.datum);
        let gamma = u_inv
            .apply(&self.datum, &self.gamma)
            .iter()
            .map(|c| -c)
            .collect();
        AffineWeylElement {
            datum: self.datum.clone(),
            gamma,
            u: u_inv,
        }
    }

    /// Linear action on `h^`; fixes `K`.
    pub fn act_on_cartan(&self, x: &HhatVector) -> HhatVector {
        let d = &self.datum;
        let ux = self.u.apply(d, &x.gamma);
        // t_gamma(y) = y + <delta,y> gamma - ((y,gamma) + |gamma|^2/2 <delta,y>) K.
        let form = d.form(&ux, &self.gamma);
        let nsq = d.norm_sq_vec(&self.gamma);
        debug_assert_eq!(nsq % 2, 0);
        HhatVector {
            gamma: ux
                .iter()
                .zip(&self.gamma)
                .map(|(a, g)| a + x.d_coeff * g)
                .collect(),
            k_coeff: x.k_coeff - form - x.d_coeff * (nsq / 2),
            d_coeff: x.d_coeff,
        }
    }

    /// Action on real affine roots: `u(beta + n delta) = u(beta) + n delta`,
    /// `t_gamma(beta + n delta) = beta + (n - <beta, gamma>) delta`.
    pub fn act_on_root(&self, root: &AffineRoot) -> AffineRoot {
        let beta = self.u.apply(&self.datum, &root.beta);
        let level = root.level - self.datum.form(&beta, &self.gamma);
        AffineRoot { beta, level }
    }

    /// Contragredient action on weights: `<w mu, x> = <mu, w^{-1} x>`.
    pub fn act_on_weight(&self, mu: &AffineWeight) -> AffineWeight {
        let d = &self.datum;
        let w_inv = self.inverse();
        let mut coeffs = Vec::with_capacity(d.rank + 1);
        for i in 0..=d.rank {
            let v = w_inv.act_on_cartan(&HhatVector::coroot(d, i));
            debug_assert_eq!(v.d_coeff, 0);
            let p = mu.pairing(d, &v);
            debug_assert!(p.is_integer());
            coeffs.push(p.to_integer());
        }
        let vd = w_inv.act_on_cartan(&HhatVector::d(d.rank));
        debug_assert_eq!(vd.d_coeff, 1);
        AffineWeight {
            coeffs,
            delta_coeff: mu.pairing(d, &vd),
        }
    }

    /// Dot action `w ∘ mu = w(mu + rho^) - rho^`.
    pub fn dot_action(&self, mu: &AffineWeight) -> AffineWeight {
        let rho = AffineWeight::rho_hat(self.datum.rank);
        self.act_on_weight(&mu.add(&rho)).sub(&rho)
    }

    /// True iff `s_i` (affine index) is a left descent, i.e.
    /// `w^{-1}(alpha_i)` is a negative affine root.
    pub fn has_left_descent(&self, i: usize) -> bool {
        let alpha = AffineRoot::simple(&self.datum, i);
        !self.inverse().act_on_root(&alpha).is_positive()
    }

    /// True iff `s_i` is a right descent, i.e. `w(alpha_i)` is negative.
    pub fn has_right_descent(&self, i: usize) -> bool {
        let alpha = AffineRoot::simple(&self.datum, i);
        !self.act_on_root(&alpha).is_positive()
    }

    /// Length and the lexicographically smallest reduced word, computed by
    /// the greedy descent algorithm (always strip the smallest left descent).
    pub fn length_and_word(&self) -> (usize, Vec<usize>) {
        let datum = &self.datum;
        let mut word = Vec::new();
        let mut w_inv = self.inverse();
        // Invariant: w_inv is the inverse of the not-yet-stripped remainder.
        loop {
            let mut found = None;
            for i in 0..=datum.rank {
                let alpha = AffineRoot::simple(datum, i);
                if !w_inv.act_on_root(&alpha).is_positive() {
                    found = Some(i);
                    break;
                }
            }
            match found {
                Some(i) => {
                    word.push(i);
                    // (s_i * w)^{-1} = w^{-1} * s_i.
                    w_inv = w_inv
                        .multiply(&AffineWeylElement::simple(datum, i))
                        .unwrap();
                }
                None => {
                    debug_assert!(w_inv.is_identity(), "no descent on a nonidentity element");
                    return (word.len(), word);
                }
            }
        }
    }

    pub fn length(&self) -> usize {
        self.length_and_word().0
    }

    /// `epsilon(w) = (-1)^{l(w)} = det of the action on h^`; computed as the
    /// determinant of the finite part since translations act unipotently.
    pub fn sign(&self) -> i64 {
        self.u.det(&self.datum)
    }

    /// Serialization `{"gamma": [...], "u": [...]}` per the wire format.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "gamma": self.gamma, "u": self.u.to_flat() })
    }
}

/// Minimal-length representative `w_gamma` of the coset `t_gamma W`:
/// start from `t_gamma` and greedily strip finite right descents.
pub fn min_coset_rep(datum: &Arc<CartanDatum>, gamma: &[i64]) -> AffineWeylElement {
    let mut w = AffineWeylElement::translation(datum, gamma.to_vec());
    loop {
        let mut stripped = false;
        for i in 1..=datum.rank {
            if w.has_right_descent(i) {
                w = w.multiply(&AffineWeylElement::simple(datum, i)).unwrap();
                stripped = true;
                break;
            }
        }
        if !stripped {
            return w;
        }
    }
}

/// True iff `w` is minimal in its coset `wW` (no finite right descent).
pub fn is_min_coset_rep(w: &AffineWeylElement) -> bool {
    (1..=w.datum.rank).all(|i| !w.has_right_descent(i))
}

/// Reduced word of the subregular element `w_i`.
///
/// Types D/E: `i` is an affine node and the word walks the unique segment
/// from `0` to `i` in the affine diagram. Type A: `i` ranges over `Z`
/// (bounded by `window`) and the word wraps around the cycle by residues.
pub fn subregular_word(datum: &CartanDatum, i: i64, window: usize) -> Result<Vec<usize>> {
    match datum.label {
        TypeLabel::A(n) => {
            let n = (n + 1) as i64;
            if i.unsigned_abs() as usize > window {
                return Err(Error::WindowExceeded(format!(
                    "subregular index {i} outside window {window} (use a larger --window)"
                )));
            }
            let residue = |k: i64| -> usize { k.rem_euclid(n) as usize };
            let mut word = Vec::new();
            if i > 0 {
                for k in (1..=i).rev() {
                    word.push(residue(k));
                }
            } else if i < 0 {
                for k in i..=-1 {
                    word.push(residue(k));
                }
            }
            word.push(0);
            Ok(word)
        }
        _ => {
            let r = datum.rank as i64;
            if i < 0 || i > r {
                return Err(Error::InvalidArgument(format!(
                    "subregular index {i} outside 0..={r}"
                )));
            }
            // BFS for the unique path 0 -> i in the affine tree.
            let target = i as usize;
            let neighbors = |node: usize| -> Vec<usize> {
                if node == 0 {
                    datum.affine_node_neighbors.clone()
                } else {
                    let mut nb = datum.adjacency[node].clone();
                    if datum.affine_node_neighbors.contains(&node) {
                        nb.push(0);
                    }
                    nb
                }
            };
            let mut prev: BTreeMap<usize, usize> = BTreeMap::new();
            let mut queue = std::collections::VecDeque::from([0usize]);
            prev.insert(0, 0);
            while let Some(node) = queue.pop_front() {
                if node == target {
                    break;
                }
                for nb in neighbors(node) {
                    prev.entry(nb).or_insert_with(|| {
                        queue.push_back(nb);
                        node
                    });
                }
            }
            let mut path = vec![target];
            while *path.last().unwrap() != 0 {
                path.push(prev[path.last().unwrap()]);
            }
            // path = [i, j_{l-1}, ..., j_1, 0]: exactly the word of w_i.
            Ok(path)
        }
    }
}

/// The subregular element `w_i`.
pub fn subregular_w(datum: &Arc<CartanDatum>, i: i64, window: usize) -> Result<AffineWeylElement> {
    Ok(AffineWeylElement::from_word(
        datum,
        &subregular_word(datum, i, window)?,
    ))
}

/// The coweight `nu_i` indexing `w_i = w_{nu_i}`; equal to the translation
/// part of `w_i`, and in types D/E to
/// `theta - alpha^v_{j_1} - ... - alpha^v_i` along the segment.
pub fn subregular_nu(datum: &Arc<CartanDatum>, i: i64, window: usize) -> Result<Vec<i64>> {
    Ok(subregular_w(datum, i, window)?.gamma)
}

/// All elements of length at most `max_len`, with BFS-certified lengths.
/// Fails if the ball would exceed `cap` elements.
pub fn enumerate_up_to_length(
    datum: &Arc<CartanDatum>,
    max_len: usize,
    cap: usize,
) -> Result<Vec<(AffineWeylElement, usize)>> {
    let mut seen: BTreeMap<AffineWeylElement, usize> = BTreeMap::new();
    let id = AffineWeylElement::identity(datum);
    seen.insert(id.clone(), 0);
    let mut frontier = vec![id];
    for len in 1..=max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for i in 0..=datum.rank {
                let sw = AffineWeylElement::simple(datum, i).multiply(w)?;
                if !seen.contains_key(&sw) {
                    seen.insert(sw.clone(), len);
                    next.push(sw);
                }
            }
        }
        if seen.len() > cap {
            return Err(Error::CapExceeded(format!(
                "length-{len} ball already holds {} elements (cap {cap})",
                seen.len()
            )));
        }
        frontier = next;
    }
    Ok(seen.into_iter().collect())
}

/// Indices of the simple reflections generating the dot-stabilizer of
/// `lambda` (requires `lambda + rho^` dominant of positive level).
pub fn stabilizer(datum: &CartanDatum, lambda: &AffineWeight) -> Result<Vec<usize>> {
    let shifted = lambda.add(&AffineWeight::rho_hat(datum.rank));
    if !shifted.is_dominant() {
        return Err(Error::InvalidWeight(format!(
            "lambda + rho^ must be dominant, got coefficients {:?}",
            shifted.coeffs
        )));
    }
    if shifted.level(datum) <= 0 {
        return Err(Error::InvalidWeight(
            "lambda + rho^ must have positive level".into(),
        ));
    }
    Ok((0..=datum.rank)
        .filter(|&i| shifted.coeffs[i] == 0)
        .collect())
}

/// True iff `w` is the longest element of the coset `W^_lambda w`, decided
/// by checking that every stabilizer generator shortens `w` on the left.
pub fn longest_coset_element(
    datum: &Arc<CartanDatum>,
    lambda: &AffineWeight,
    w: &AffineWeylElement,
) -> Result<bool> {
    let stab = stabilizer(datum, lambda)?;
    let lw = w.length();
    for j in stab {
        let sjw = AffineWeylElement::simple(datum, j).multiply(w)?;
        if sjw.length() > lw {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Type A only: the element as a periodic permutation of `Z`, stored by its
/// window `[sigma(1), ..., sigma(n)]`; `sigma(i + n) = sigma(i) + n` and the
/// window offsets sum to zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PeriodicPermutation {
    pub n: usize,
    pub window: Vec<i64>,
}

impl PeriodicPermutation {
    pub fn identity(n: usize) -> Self {
        PeriodicPermutation {
            n,
            window: (1..=n as i64).collect(),
        }
    }

    pub fn apply(&self, k: i64) -> i64 {
        let n = self.n as i64;
        let rem = (k - 1).rem_euclid(n);
        let q = (k - 1 - rem) / n;
        self.window[rem as usize] + q * n
    }

    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        PeriodicPermutation {
            n: self.n,
            window: (1..=self.n as i64)
                .map(|k| self.apply(other.apply(k)))
                .collect(),
        }
    }

    /// Checks the defining invariants: residues form a permutation and the
    /// offsets sum to zero (affine, not extended-affine).
    pub fn is_valid(&self) -> bool {
        let n = self.n as i64;
        let mut residues: Vec<i64> = self.window.iter().map(|&v| (v - 1).rem_euclid(n)).collect();
        residues.sort_unstable();
        let perm_ok = residues == (0..n).collect::<Vec<_>>();
        let sum_ok = self
            .window
            .iter()
            .enumerate()
            .map(|(i, &v)| v - (i as i64 + 1))
            .sum::<i64>()
            == 0;
        perm_ok && sum_ok
    }

    pub fn from_element(w: &AffineWeylElement) -> Result<Self> {
        let datum = &w.datum;
        let n = datum.eps_dim().ok_or_else(|| {
            Error::InvalidArgument("periodic permutations exist in type A only".into())
        })?;
        let FinitePart::Perm(p) = &w.u else {
            unreachable!()
        };
        let eps = datum.coroot_to_eps(&w.gamma).unwrap();
        let window = (0..n)
            .map(|j| {
                let uj = p[j] as i64;
                uj + eps[uj as usize - 1] * n as i64
            })
            .collect();
        Ok(PeriodicPermutation { n, window })
    }

    pub fn to_element(&self, datum: &Arc<CartanDatum>) -> Result<AffineWeylElement> {
        let n = datum.eps_dim().ok_or_else(|| {
            Error::InvalidArgument("periodic permutations exist in type A only".into())
        })?;
        assert_eq!(n, self.n);
        let mut perm = vec![0u32; n];
        let mut eps = vec![0i64; n];
        for (j, &img) in self.window.iter().enumerate() {
            let base = (img - 1).rem_euclid(n as i64) + 1;
            perm[j] = base as u32;
            eps[base as usize - 1] = (img - base) / n as i64;
        }
        let gamma = datum.eps_to_coroot(&eps).unwrap();
        Ok(AffineWeylElement {
            datum: datum.clone(),
            gamma,
            u: FinitePart::Perm(perm),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_data::build_cartan;
    use num_rational::Ratio;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn datum(label: &str) -> Arc<CartanDatum> {
        build_cartan(TypeLabel::parse(label).unwrap()).unwrap()
    }

    fn random_element(
        datum: &Arc<CartanDatum>,
        rng: &mut impl Rng,
        steps: usize,
    ) -> AffineWeylElement {
        let mut w = AffineWeylElement::identity(datum);
        for _ in 0..steps {
            let i = rng.gen_range(0..=datum.rank);
            w = w.multiply(&AffineWeylElement::simple(datum, i)).unwrap();
        }
        w
    }

    #[test]
    fn translations_compose_additively() {
        let d = datum("D4");
        let t1 = AffineWeylElement::translation(&d, d.theta.clone());
        let t2 = AffineWeylElement::translation(&d, d.theta.iter().map(|c| -c).collect());
        assert!(t1.multiply(&t2).unwrap().is_identity());
    }

    #[test]
    fn s0_is_theta_reflection_times_translation() {
        for label in ["A2", "D4"] {
            let d = datum(label);
            let s0 = AffineWeylElement::simple(&d, 0);
            let s_theta = AffineWeylElement {
                datum: d.clone(),
                gamma: vec![0; d.rank],
                u: FinitePart::theta_reflection(&d),
            };
            let t_neg = AffineWeylElement::translation(&d, d.theta.iter().map(|c| -c).collect());
            assert_eq!(s0, s_theta.multiply(&t_neg).unwrap(), "{label}");
        }
    }

    #[test]
    fn braid_order_in_a2() {
        let d = datum("A2");
        let s1 = AffineWeylElement::simple(&d, 1);
        let s2 = AffineWeylElement::simple(&d, 2);
        let mut w = AffineWeylElement::identity(&d);
        for _ in 0..3 {
            w = w.multiply(&s1).unwrap().multiply(&s2).unwrap();
        }
        assert!(w.is_identity(), "(s1 s2)^3 = e in the A2 finite part");
    }

    #[test]
    fn group_axioms_on_random_triples() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for label in ["A2", "A3", "D4"] {
            let d = datum(label);
            for _ in 0..167 {
                let (sa, sb, sc) = (
                    rng.gen_range(0..10),
                    rng.gen_range(0..10),
                    rng.gen_range(0..10),
                );
                let a = random_element(&d, &mut rng, sa);
                let b = random_element(&d, &mut rng, sb);
                let c = random_element(&d, &mut rng, sc);
                let ab_c = a.multiply(&b).unwrap().multiply(&c).unwrap();
                let a_bc = a.multiply(&b.multiply(&c).unwrap()).unwrap();
                assert_eq!(ab_c, a_bc);
                assert!(a.multiply(&a.inverse()).unwrap().is_identity());
                assert!(a.inverse().multiply(&a).unwrap().is_identity());
            }
        }
    }

    #[test]
    fn inverses_of_finite_parts_in_all_types() {
        // Matrix inversion must be exact at every rank; D5/E-series produce
        // intermediate pivots > 1 during elimination.
        let mut rng = ChaCha8Rng::seed_from_u64(61);
        for label in ["A2", "A4", "D4", "D5", "E6", "E7", "E8"] {
            let d = datum(label);
            for _ in 0..60 {
                let steps = rng.gen_range(0..14);
                let w = random_element(&d, &mut rng, steps);
                assert!(w.multiply(&w.inverse()).unwrap().is_identity(), "{label}");
                assert!(w.inverse().multiply(&w).unwrap().is_identity(), "{label}");
                // The inverse acts as the inverse on the Cartan.
                let x = HhatVector {
                    gamma: (0..d.rank).map(|_| rng.gen_range(-3i64..=3)).collect(),
                    k_coeff: rng.gen_range(-2..=2),
                    d_coeff: rng.gen_range(-2..=2),
                };
                assert_eq!(w.inverse().act_on_cartan(&w.act_on_cartan(&x)), x, "{label}");
            }
        }
    }

    #[test]
    fn mismatched_datum_rejected() {
        let a = AffineWeylElement::identity(&datum("A2"));
        let b = AffineWeylElement::identity(&datum("A3"));
        assert!(a.multiply(&b).is_err());
    }

    #[test]
    fn action_examples() {
        let d = datum("D4");
        let r = d.rank;
        let gamma = vec![1, -2, 0, 3];
        let t = AffineWeylElement::translation(&d, gamma.clone());
        // t_gamma(K) = K.
        assert_eq!(t.act_on_cartan(&HhatVector::k(r)), HhatVector::k(r));
        // t_gamma(x) = x - (x, gamma) K for lattice x.
        let x = HhatVector::lattice(vec![0, 1, -1, 2]);
        let tx = t.act_on_cartan(&x);
        assert_eq!(tx.gamma, x.gamma);
        assert_eq!(tx.k_coeff, -d.form(&x.gamma, &gamma));
        // t_gamma(d) = d + gamma - |gamma|^2/2 K.
        let td = t.act_on_cartan(&HhatVector::d(r));
        assert_eq!(td.gamma, gamma);
        assert_eq!(td.k_coeff, -d.norm_sq_vec(&gamma) / 2);
        assert_eq!(td.d_coeff, 1);
        // t_{alpha_i^v}(d) = d + alpha_i^v - K.
        let ti = AffineWeylElement::translation(&d, HhatVector::simple_coroot(r, 2).gamma);
        let tid = ti.act_on_cartan(&HhatVector::d(r));
        assert_eq!(tid.k_coeff, -1);
        // s_i(alpha_i^v) = -alpha_i^v.
        let s2 = AffineWeylElement::simple(&d, 2);
        let v = HhatVector::simple_coroot(r, 2);
        let sv = s2.act_on_cartan(&v);
        assert_eq!(sv.gamma, vec![0, -1, 0, 0]);
    }

    #[test]
    fn action_preserves_form_and_is_group_action() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for label in ["A3", "D4"] {
            let d = datum(label);
            for _ in 0..50 {
                let a = random_element(&d, &mut rng, 8);
                let b = random_element(&d, &mut rng, 8);
                let x = HhatVector {
                    gamma: (0..d.rank).map(|_| rng.gen_range(-4i64..5)).collect(),
                    k_coeff: rng.gen_range(-3..4),
                    d_coeff: rng.gen_range(-2..3),
                };
                let y = HhatVector {
                    gamma: (0..d.rank).map(|_| rng.gen_range(-4i64..5)).collect(),
                    k_coeff: rng.gen_range(-3..4),
                    d_coeff: rng.gen_range(-2..3),
                };
                let ab = a.multiply(&b).unwrap();
                assert_eq!(ab.act_on_cartan(&x), a.act_on_cartan(&b.act_on_cartan(&x)));
                // Invariant form on h^: (x,y) = form(gamma parts) + k d' + d k'.
                let full = |p: &HhatVector, q: &HhatVector| {
                    d.form(&p.gamma, &q.gamma) + p.k_coeff * q.d_coeff + p.d_coeff * q.k_coeff
                };
                assert_eq!(
                    full(&a.act_on_cartan(&x), &a.act_on_cartan(&y)),
                    full(&x, &y)
                );
            }
        }
    }

    #[test]
    fn weight_action_is_contragredient() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let d = datum("A2");
        for _ in 0..100 {
            let w = random_element(&d, &mut rng, 7);
            let mu = AffineWeight::new(
                (0..=d.rank).map(|_| rng.gen_range(-4i64..5)).collect(),
                Ratio::new(rng.gen_range(-4i64..5), rng.gen_range(1i64..4)),
            );
            let x = HhatVector {
                gamma: (0..d.rank).map(|_| rng.gen_range(-4i64..5)).collect(),
                k_coeff: rng.gen_range(-3..4),
                d_coeff: rng.gen_range(-2..3),
            };
            let lhs = w.act_on_weight(&mu).pairing(&d, &x);
            let rhs = mu.pairing(&d, &w.inverse().act_on_cartan(&x));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn dot_action_examples() {
        let d = datum("D4");
        let mu = AffineWeight::new(vec![2, 0, -1, 1, 0], Ratio::new(1, 3));
        let id = AffineWeylElement::identity(&d);
        assert_eq!(id.dot_action(&mu), mu);

        // lambda = -Lambda_0, w = s_0: s_0 fixes lambda + rho^, so
        // Lambda = w^{-1} dot lambda = -Lambda_0.
        let mut lambda = AffineWeight::zero(4);
        lambda.coeffs[0] = -1;
        let s0 = AffineWeylElement::simple(&d, 0);
        assert_eq!(s0.inverse().dot_action(&lambda), lambda);

        // lambda = Lambda_k - Lambda_2 (k = 1), w = s_2 s_0:
        // Lambda = w^{-1} dot lambda = -2 Lambda_0 + Lambda_k, up to the
        // free delta-shift in lambda (x delta moves along with the action).
        let mut lambda = AffineWeight::zero(4);
        lambda.coeffs[1] = 1;
        lambda.coeffs[2] = -1;
        let w = AffineWeylElement::from_word(&d, &[2, 0]);
        let big = w.inverse().dot_action(&lambda);
        assert_eq!(big.coeffs, vec![-2, 1, 0, 0, 0]);
        // Choosing x = 1 in lambda makes Lambda's delta part vanish exactly.
        lambda.delta_coeff = Ratio::from_integer(1);
        let big = w.inverse().dot_action(&lambda);
        assert_eq!(big.coeffs, vec![-2, 1, 0, 0, 0]);
        assert_eq!(big.delta_coeff, Ratio::from_integer(0));
    }

    #[test]
    fn length_examples() {
        let d = datum("D4");
        assert_eq!(
            AffineWeylElement::identity(&d).length_and_word(),
            (0, vec![])
        );
        let s0 = AffineWeylElement::simple(&d, 0);
        assert_eq!(s0.length_and_word(), (1, vec![0]));
        let w = AffineWeylElement::from_word(&d, &[2, 0]);
        assert_eq!(w.length_and_word(), (2, vec![2, 0]));
    }

    #[test]
    fn words_multiply_back_and_signs_match() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for label in ["A2", "D4"] {
            let d = datum(label);
            for _ in 0..60 {
                let steps = rng.gen_range(0..12);
                let w = random_element(&d, &mut rng, steps);
                let (len, word) = w.length_and_word();
                assert_eq!(word.len(), len);
                assert_eq!(AffineWeylElement::from_word(&d, &word), w);
                assert_eq!(w.sign(), if len % 2 == 0 { 1 } else { -1 });
            }
        }
    }

    #[test]
    fn length_changes_by_one_under_simple_mult() {
        let mut rng = ChaCha8Rng::seed_from_u64(19);
        let d = datum("A3");
        for _ in 0..50 {
            let steps = rng.gen_range(0..10);
            let w = random_element(&d, &mut rng, steps);
            let lw = w.length() as i64;
            for i in 0..=d.rank {
                let sw = AffineWeylElement::simple(&d, i).multiply(&w).unwrap();
                assert_eq!(((sw.length() as i64) - lw).abs(), 1);
            }
        }
    }

    #[test]
    fn translations_have_sign_one() {
        let d = datum("A2");
        for a in -2i64..=2 {
            for b in -2i64..=2 {
                let t = AffineWeylElement::translation(&d, vec![a, b]);
                assert_eq!(t.sign(), 1);
                assert_eq!(t.length() % 2, 0);
            }
        }
    }

    #[test]
    fn ball_sizes_in_affine_a2() {
        let d = datum("A2");
        let ball = enumerate_up_to_length(&d, 2, 100_000).unwrap();
        assert_eq!(ball.iter().filter(|(_, l)| *l == 0).count(), 1);
        assert_eq!(ball.iter().filter(|(_, l)| *l <= 1).count(), 4);
        assert_eq!(ball.len(), 10, "1 + 3 + 6 elements of length <= 2");
        assert!(enumerate_up_to_length(&d, 5, 10).is_err());
    }

    #[test]
    fn greedy_length_agrees_with_bfs() {
        // Module-level smoke version at length 5; the acceptance suite runs
        // the full sweep at length 8.
        for label in ["A2", "A3", "D4"] {
            let d = datum(label);
            for (w, bfs_len) in enumerate_up_to_length(&d, 5, 1_000_000).unwrap() {
                assert_eq!(w.length(), bfs_len, "{label}: {:?}", w.to_json());
            }
        }
    }

    #[test]
    fn min_coset_reps() {
        let d = datum("D4");
        assert!(min_coset_rep(&d, &[0, 0, 0, 0]).is_identity());
        // gamma = theta gives w_theta = s_0.
        let w_theta = min_coset_rep(&d, &d.theta.clone());
        assert_eq!(w_theta, AffineWeylElement::simple(&d, 0));
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..40 {
            let gamma: Vec<i64> = (0..4).map(|_| rng.gen_range(-3i64..4)).collect();
            let w = min_coset_rep(&d, &gamma);
            assert_eq!(w.gamma, gamma, "w_gamma lies in t_gamma W");
            assert!(is_min_coset_rep(&w));
        }
    }

    #[test]
    fn subregular_elements_de() {
        let d = datum("D4");
        // i = 0: w_0 = s_0, nu_0 = theta.
        assert_eq!(
            subregular_w(&d, 0, 12).unwrap(),
            AffineWeylElement::simple(&d, 0)
        );
        assert_eq!(subregular_nu(&d, 0, 12).unwrap(), d.theta);
        // i = 2 (branch node adjacent to 0): w_2 = s_2 s_0, nu_2 = theta - alpha_2^v.
        assert_eq!(subregular_word(&d, 2, 12).unwrap(), vec![2, 0]);
        assert_eq!(subregular_nu(&d, 2, 12).unwrap(), vec![1, 1, 1, 1]);
        // i = 1: segment 0 - 2 - 1, nu_1 = theta - alpha_2^v - alpha_1^v.
        assert_eq!(subregular_word(&d, 1, 12).unwrap(), vec![1, 2, 0]);
        assert_eq!(subregular_nu(&d, 1, 12).unwrap(), vec![0, 1, 1, 1]);
        // Closed formula nu_i = theta - sum of segment coroots, all i.
        for i in 0..=4i64 {
            let word = subregular_word(&d, i, 12).unwrap();
            let mut expected = d.theta.clone();
            for &j in word.iter().filter(|&&j| j != 0) {
                expected[j - 1] -= 1;
            }
            assert_eq!(subregular_nu(&d, i, 12).unwrap(), expected, "i = {i}");
        }
        // w_{nu_i} = w_i and the defining words are reduced.
        for i in 0..=4i64 {
            let w_i = subregular_w(&d, i, 12).unwrap();
            assert_eq!(min_coset_rep(&d, &w_i.gamma), w_i);
            assert_eq!(w_i.length(), subregular_word(&d, i, 12).unwrap().len());
        }
    }

    #[test]
    fn subregular_elements_type_a() {
        let d = datum("A2");
        // n = 3: i = -1 gives w_{-1} = s_2 s_0 since [-1] = 2.
        assert_eq!(subregular_word(&d, -1, 12).unwrap(), vec![2, 0]);
        assert_eq!(subregular_word(&d, 1, 12).unwrap(), vec![1, 0]);
        assert_eq!(subregular_word(&d, 4, 12).unwrap(), vec![1, 0, 2, 1, 0]);
        assert!(subregular_w(&d, 40, 12).is_err());
        for i in -8i64..=8 {
            let w_i = subregular_w(&d, i, 12).unwrap();
            assert_eq!(w_i.length() as i64, i.abs() + 1, "w_i words are reduced");
            assert_eq!(min_coset_rep(&d, &w_i.gamma), w_i, "w_i is minimal");
        }
        // Distinct i give distinct nu_i.
        let nus: std::collections::BTreeSet<Vec<i64>> = (-8i64..=8)
            .map(|i| subregular_nu(&d, i, 12).unwrap())
            .collect();
        assert_eq!(nus.len(), 17);
    }

    #[test]
    fn unique_reduced_decomposition_of_subregular_elements() {
        // Enumerate all reduced words by DFS and check uniqueness.
        fn reduced_words(w: &AffineWeylElement) -> usize {
            if w.is_identity() {
                return 1;
            }
            let mut count = 0;
            for i in 0..=w.datum.rank {
                if w.has_left_descent(i) {
                    let sw = AffineWeylElement::simple(&w.datum, i).multiply(w).unwrap();
                    count += reduced_words(&sw);
                }
            }
            count
        }
        for label in ["A2", "D4"] {
            let d = datum(label);
            let idx: Vec<i64> = if label == "A2" {
                (-4..=4).collect()
            } else {
                (0..=4).collect()
            };
            for i in idx {
                let w = subregular_w(&d, i, 12).unwrap();
                assert_eq!(reduced_words(&w), 1, "{label}, i = {i}");
            }
        }
    }

    #[test]
    fn stabilizer_and_longest_coset() {
        let d = datum("D4");
        // Regular lambda: empty stabilizer, every w longest in its singleton coset.
        let zero = AffineWeight::zero(4);
        assert_eq!(stabilizer(&d, &zero).unwrap(), Vec::<usize>::new());
        let w = AffineWeylElement::from_word(&d, &[1, 2, 0]);
        assert!(longest_coset_element(&d, &zero, &w).unwrap());

        // lambda = -Lambda_0: stabilizer {0}; w = s_0 is longest in its coset.
        let mut lam = AffineWeight::zero(4);
        lam.coeffs[0] = -1;
        assert_eq!(stabilizer(&d, &lam).unwrap(), vec![0]);
        let s0 = AffineWeylElement::simple(&d, 0);
        assert!(longest_coset_element(&d, &lam, &s0).unwrap());
        assert!(!longest_coset_element(&d, &lam, &AffineWeylElement::identity(&d)).unwrap());

        // lambda = -Lambda_2: stabilizer {2}.
        let mut lam2 = AffineWeight::zero(4);
        lam2.coeffs[2] = -1;
        assert_eq!(stabilizer(&d, &lam2).unwrap(), vec![2]);

        // Non-dominant lambda + rho^ is rejected.
        let mut bad = AffineWeight::zero(4);
        bad.coeffs[1] = -2;
        assert!(stabilizer(&d, &bad).is_err());
    }

    #[test]
    fn periodic_permutation_model_matches_group_law() {
        let d = datum("A2");
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        for _ in 0..500 {
            let (sa, sb) = (rng.gen_range(0..9), rng.gen_range(0..9));
            let a = random_element(&d, &mut rng, sa);
            let b = random_element(&d, &mut rng, sb);
            let pa = PeriodicPermutation::from_element(&a).unwrap();
            let pb = PeriodicPermutation::from_element(&b).unwrap();
            assert!(pa.is_valid());
            let ab = a.multiply(&b).unwrap();
            let pab = pa.compose(&pb);
            assert_eq!(PeriodicPermutation::from_element(&ab).unwrap(), pab);
            assert_eq!(pab.to_element(&d).unwrap(), ab);
        }
        // sigma(i + n) = sigma(i) + n by construction.
        let w = random_element(&d, &mut rng, 6);
        let p = PeriodicPermutation::from_element(&w).unwrap();
        for k in -7i64..7 {
            assert_eq!(p.apply(k + 3), p.apply(k) + 3);
        }
    }

    #[test]
    fn k_is_invariant_under_all_generators() {
        for label in ["A2", "D4", "E6"] {
            let d = datum(label);
            let k = HhatVector::k(d.rank);
            for i in 0..=d.rank {
                let s = AffineWeylElement::simple(&d, i);
                assert_eq!(s.act_on_cartan(&k), k, "{label}, s_{i}");
            }
        }
    }
}
