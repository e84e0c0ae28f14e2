//! Exact root-system and affine Cartan data for the simply-laced types
//! `A_n` (n >= 2), `D_n` (n >= 4), `E6`, `E7`, `E8`.
//!
//! Everything is stored in integer coordinates. Finite (co)roots live in the
//! simple-coroot basis of the coroot lattice `Q^v`; under the simply-laced
//! identification `eta(alpha_i^v) = alpha_i` the same vectors serve as
//! roots. The invariant bilinear form on `Q^v`, normalized by
//! `(theta, theta) = 2`, is then given by the Cartan matrix itself. Type A
//! additionally exposes the `epsilon`-coordinate picture of `Q^v` as the
//! sum-zero sublattice of `Z^n`; see [`CartanDatum::coroot_to_eps`].

use num_rational::Ratio;
use std::fmt;
use std::sync::Arc;

use crate::{Error, Result};

/// Simply-laced type label with rank.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TypeLabel {
    A(usize),
    D(usize),
    E6,
    E7,
    E8,
}

impl TypeLabel {
    pub fn rank(self) -> usize {
        match self {
            TypeLabel::A(n) => n,
            TypeLabel::D(n) => n,
            TypeLabel::E6 => 6,
            TypeLabel::E7 => 7,
            TypeLabel::E8 => 8,
        }
    }

    pub fn is_type_a(self) -> bool {
        matches!(self, TypeLabel::A(_))
    }

    /// Parse labels like `A2`, `a_2`, `D4`, `E6`. Non-simply-laced families
    /// and ranks below the supported bound are rejected.
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim().replace('_', "");
        let mut chars = t.chars();
        let family = chars
            .next()
            .ok_or_else(|| Error::UnsupportedType("empty type label".into()))?
            .to_ascii_uppercase();
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::UnsupportedType(format!("cannot parse rank in `{s}`")))?;
        match (family, rank) {
            ('A', n) if n >= 2 => Ok(TypeLabel::A(n)),
            ('A', _) => Err(Error::UnsupportedType(
                "type A requires rank >= 2 (sl_n with n >= 3)".into(),
            )),
            ('D', n) if n >= 4 => Ok(TypeLabel::D(n)),
            ('D', _) => Err(Error::UnsupportedType("type D requires rank >= 4".into())),
            ('E', 6) => Ok(TypeLabel::E6),
            ('E', 7) => Ok(TypeLabel::E7),
            ('E', 8) => Ok(TypeLabel::E8),
            ('E', _) => Err(Error::UnsupportedType(
                "type E exists for ranks 6, 7, 8".into(),
            )),
            (c, _) => Err(Error::UnsupportedType(format!(
                "type {c} is not simply-laced (supported: A_n n>=2, D_n n>=4, E6, E7, E8)"
            ))),
        }
    }
}

impl fmt::Display for TypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TypeLabel::A(n) => write!(f, "A{n}"),
            TypeLabel::D(n) => write!(f, "D{n}"),
            TypeLabel::E6 => write!(f, "E6"),
            TypeLabel::E7 => write!(f, "E7"),
            TypeLabel::E8 => write!(f, "E8"),
        }
    }
}

/// Immutable root-system data for one simply-laced type.
///
/// Node labelings: `A_n` is the path `1 - 2 - ... - n`; `D_n` is the path
/// `1 - 2 - ... - (n-2)` with both `n-1` and `n` attached to `n-2` (so the
/// `D_4` branch node is labeled 2); `E_n` attaches node 2 to node 4 of the
/// path `1 - 3 - 4 - 5 - ...`. The affine node is labeled 0 and its
/// neighbors are computed from the highest root.
#[derive(Debug)]
pub struct CartanDatum {
    pub label: TypeLabel,
    pub rank: usize,
    /// Finite Cartan matrix `a_ij = <alpha_j, alpha_i^v>`, row-major.
    pub cartan: Vec<Vec<i64>>,
    /// All positive roots in simple-(co)root coordinates, by height.
    pub positive_roots: Vec<Vec<i64>>,
    /// Highest root `theta` (equals the highest coroot in coordinates).
    pub theta: Vec<i64>,
    /// Marks: coefficients of `theta` on the simple roots.
    pub marks: Vec<i64>,
    /// Comarks; in simply-laced types these equal the marks.
    pub comarks: Vec<i64>,
    /// Dual Coxeter number `h^v = 1 + sum of comarks`.
    pub dual_coxeter: i64,
    /// `2 * rho` in root coordinates, where `rho` is the finite half-sum of
    /// positive roots.
    pub two_rho: Vec<i64>,
    /// Finite Dynkin-diagram neighbors of each node (1-based).
    pub adjacency: Vec<Vec<usize>>,
    /// Neighbors of the affine node 0 (nodes `i` with `<theta, alpha_i^v> = 1`).
    pub affine_node_neighbors: Vec<usize>,
}

impl PartialEq for CartanDatum {
    fn eq(&self, other: &Self) -> bool {
        self.label == other.label
    }
}
impl Eq for CartanDatum {}

fn adjacency_for(label: TypeLabel) -> Vec<(usize, usize)> {
    match label {
        TypeLabel::A(n) => (1..n).map(|i| (i, i + 1)).collect(),
        TypeLabel::D(n) => {
            let mut e: Vec<(usize, usize)> = (1..n - 1).map(|i| (i, i + 1)).collect();
            e.push((n - 2, n));
            e
        }
        TypeLabel::E6 => vec![(1, 3), (3, 4), (4, 5), (5, 6), (2, 4)],
        TypeLabel::E7 => vec![(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (2, 4)],
        TypeLabel::E8 => vec![(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4)],
    }
}

/// Build the [`CartanDatum`] for a supported type label.
///
/// The positive roots are enumerated exhaustively by height closure; the
/// highest root, marks, and `h^v` are derived from that enumeration and the
/// structural invariants are asserted.
pub fn build_cartan(label: TypeLabel) -> Result<Arc<CartanDatum>> {
    let r = label.rank();
    let edges = adjacency_for(label);
    let mut cartan = vec![vec![0i64; r]; r];
    for (i, row) in cartan.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut adjacency = vec![Vec::new(); r + 1];
    for &(i, j) in &edges {
        cartan[i - 1][j - 1] = -1;
        cartan[j - 1][i - 1] = -1;
        adjacency[i].push(j);
        adjacency[j].push(i);
    }
    for nb in adjacency.iter_mut() {
        nb.sort_unstable();
    }

    // Height-closure enumeration of the positive roots: a positive root beta
    // with (beta, alpha_i) = -1 extends to the root beta + alpha_i.
    let pairing = |beta: &[i64], i: usize| -> i64 { (0..r).map(|j| cartan[i][j] * beta[j]).sum() };
    let mut roots: Vec<Vec<i64>> = (0..r)
        .map(|i| {
            let mut v = vec![0i64; r];
            v[i] = 1;
            v
        })
        .collect();
    let mut seen: std::collections::BTreeSet<Vec<i64>> = roots.iter().cloned().collect();
    let mut frontier = roots.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for beta in &frontier {
            for i in 0..r {
                if pairing(beta, i) == -1 {
                    let mut g = beta.clone();
                    g[i] += 1;
                    if seen.insert(g.clone()) {
                        next.push(g);
                    }
                }
            }
        }
        roots.extend(next.iter().cloned());
        frontier = next;
    }
    roots.sort_by_key(|v| (v.iter().sum::<i64>(), v.clone()));

    let theta = roots.last().expect("nonempty root system").clone();
    // Highest-root property: theta + alpha_i is never a root.
    for i in 0..r {
        let mut t = theta.clone();
        t[i] += 1;
        assert!(!seen.contains(&t), "theta + alpha_{} is a root", i + 1);
        assert!(pairing(&theta, i) >= 0, "theta is not dominant");
    }
    let height: i64 = theta.iter().sum();
    assert!(
        roots
            .iter()
            .filter(|v| v.iter().sum::<i64>() == height)
            .count()
            == 1,
        "highest root is not unique"
    );

    let marks = theta.clone();
    let comarks = theta.clone();
    let dual_coxeter = 1 + comarks.iter().sum::<i64>();

    let mut two_rho = vec![0i64; r];
    for root in &roots {
        for i in 0..r {
            two_rho[i] += root[i];
        }
    }
    // <rho, alpha_i^v> = 1 for every finite i.
    for i in 0..r {
        assert_eq!(
            pairing(&two_rho, i),
            2,
            "rho pairing failed at node {}",
            i + 1
        );
    }
    // Normalization (theta, theta) = 2.
    let theta_norm: i64 = (0..r).map(|i| theta[i] * pairing(&theta, i)).sum();
    assert_eq!(theta_norm, 2, "(theta, theta) != 2");

    let affine_node_neighbors: Vec<usize> = (0..r)
        .filter(|&i| pairing(&theta, i) > 0)
        .map(|i| i + 1)
        .collect();

    Ok(Arc::new(CartanDatum {
        label,
        rank: r,
        cartan,
        positive_roots: roots,
        theta,
        marks,
        comarks,
        dual_coxeter,
        two_rho,
        adjacency,
        affine_node_neighbors,
    }))
}

impl CartanDatum {
    /// Bilinear form `(x, y)` on `Q^v` in simple-coroot coordinates.
    pub fn form(&self, x: &[i64], y: &[i64]) -> i64 {
        let mut s = 0;
        for (xi, row) in x.iter().zip(&self.cartan) {
            if *xi == 0 {
                continue;
            }
            let inner: i64 = row.iter().zip(y).map(|(a, b)| a * b).sum();
            s += xi * inner;
        }
        s
    }

    /// `|gamma|^2 = (gamma, gamma)`, an even nonnegative integer on `Q^v`.
    pub fn norm_sq_vec(&self, gamma: &[i64]) -> i64 {
        self.form(gamma, gamma)
    }

    /// `<alpha_i, x>` for a finite simple root `alpha_i` (1-based `i`) and
    /// `x` in coroot coordinates.
    pub fn simple_pairing(&self, i: usize, x: &[i64]) -> i64 {
        (0..self.rank).map(|j| self.cartan[i - 1][j] * x[j]).sum()
    }

    /// Comark of an affine node (`a_0^v = 1`).
    pub fn comark(&self, i: usize) -> i64 {
        if i == 0 {
            1
        } else {
            self.comarks[i - 1]
        }
    }

    /// Affine Cartan matrix entry `<alpha_j, alpha_i^v>` for `i, j` in `0..=rank`.
    pub fn affine_cartan(&self, i: usize, j: usize) -> i64 {
        match (i, j) {
            (0, 0) => 2,
            (0, j) => -self.simple_pairing(j, &self.theta),
            (i, 0) => -self.simple_pairing(i, &self.theta),
            (i, j) => self.cartan[i - 1][j - 1],
        }
    }

    /// Number of epsilon coordinates for type A (`n = rank + 1`).
    pub fn eps_dim(&self) -> Option<usize> {
        match self.label {
            TypeLabel::A(n) => Some(n + 1),
            _ => None,
        }
    }

    /// Type A only: convert coroot coordinates to the sum-zero
    /// epsilon-coordinate vector of length `n` (`alpha_i^v = eps_i - eps_{i+1}`).
    pub fn coroot_to_eps(&self, gamma: &[i64]) -> Option<Vec<i64>> {
        let n = self.eps_dim()?;
        let mut eps = vec![0i64; n];
        for k in 0..n {
            let prev = if k == 0 { 0 } else { gamma[k - 1] };
            let cur = if k == n - 1 { 0 } else { gamma[k] };
            eps[k] = cur - prev;
        }
        // alpha_i^v = eps_i - eps_{i+1} means x_i = eps_1 + ... + eps_i read
        // backwards; the inverse is the difference above.
        debug_assert_eq!(eps.iter().sum::<i64>(), 0);
        Some(eps)
    }

    /// Type A only: inverse of [`CartanDatum::coroot_to_eps`]; requires a
    /// sum-zero vector.
    pub fn eps_to_coroot(&self, eps: &[i64]) -> Option<Vec<i64>> {
        let n = self.eps_dim()?;
        assert_eq!(eps.len(), n);
        assert_eq!(eps.iter().sum::<i64>(), 0, "not in the sum-zero sublattice");
        let mut gamma = vec![0i64; n - 1];
        let mut acc = 0;
        for k in 0..n - 1 {
            acc += eps[k];
            gamma[k] = acc;
        }
        Some(gamma)
    }

    /// Serializable table for golden-file tests and the `roots` subcommand.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "type": self.label.to_string(),
            "rank": self.rank,
            "cartan_matrix": self.cartan,
            "positive_roots": self.positive_roots,
            "theta": self.theta,
            "marks": self.marks,
            "comarks": self.comarks,
            "dual_coxeter_number": self.dual_coxeter,
            "two_rho": self.two_rho,
            "affine_node_neighbors": self.affine_node_neighbors,
            "adjacency": (1..=self.rank).map(|i| self.adjacency[i].clone()).collect::<Vec<_>>(),
        })
    }
}

/// An element of `h^ = h + C K + C d` with integer lattice part: `gamma` in
/// simple-coroot coordinates plus integer multiples of `K` and `d`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HhatVector {
    pub gamma: Vec<i64>,
    pub k_coeff: i64,
    pub d_coeff: i64,
}

impl HhatVector {
    pub fn zero(rank: usize) -> Self {
        HhatVector {
            gamma: vec![0; rank],
            k_coeff: 0,
            d_coeff: 0,
        }
    }

    pub fn lattice(gamma: Vec<i64>) -> Self {
        HhatVector {
            gamma,
            k_coeff: 0,
            d_coeff: 0,
        }
    }

    pub fn simple_coroot(rank: usize, i: usize) -> Self {
        assert!(i >= 1 && i <= rank);
        let mut v = HhatVector::zero(rank);
        v.gamma[i - 1] = 1;
        v
    }

    /// `alpha_0^v = K - theta^v`.
    pub fn affine_simple_coroot(datum: &CartanDatum) -> Self {
        HhatVector {
            gamma: datum.theta.iter().map(|&c| -c).collect(),
            k_coeff: 1,
            d_coeff: 0,
        }
    }

    /// Simple coroot for an affine node index in `0..=rank`.
    pub fn coroot(datum: &CartanDatum, i: usize) -> Self {
        if i == 0 {
            HhatVector::affine_simple_coroot(datum)
        } else {
            HhatVector::simple_coroot(datum.rank, i)
        }
    }

    pub fn k(rank: usize) -> Self {
        HhatVector {
            gamma: vec![0; rank],
            k_coeff: 1,
            d_coeff: 0,
        }
    }

    pub fn d(rank: usize) -> Self {
        HhatVector {
            gamma: vec![0; rank],
            k_coeff: 0,
            d_coeff: 1,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        HhatVector {
            gamma: self
                .gamma
                .iter()
                .zip(&other.gamma)
                .map(|(a, b)| a + b)
                .collect(),
            k_coeff: self.k_coeff + other.k_coeff,
            d_coeff: self.d_coeff + other.d_coeff,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        HhatVector {
            gamma: self
                .gamma
                .iter()
                .zip(&other.gamma)
                .map(|(a, b)| a - b)
                .collect(),
            k_coeff: self.k_coeff - other.k_coeff,
            d_coeff: self.d_coeff - other.d_coeff,
        }
    }

    pub fn is_lattice(&self) -> bool {
        self.k_coeff == 0 && self.d_coeff == 0
    }
}

/// `|gamma|^2` of a pure lattice vector; rejects vectors with `K` or `d`
/// components.
pub fn norm_sq(datum: &CartanDatum, v: &HhatVector) -> Result<i64> {
    if !v.is_lattice() {
        return Err(Error::InvalidArgument(
            "norm_sq requires a pure coroot-lattice vector (zero K and d parts)".into(),
        ));
    }
    let n = datum.norm_sq_vec(&v.gamma);
    debug_assert!(n >= 0 && n % 2 == 0);
    Ok(n)
}

/// A real affine root `beta + n delta` (`beta` a finite root, in
/// (co)root coordinates) or, when `beta = 0`, an imaginary root `n delta`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineRoot {
    pub beta: Vec<i64>,
    pub level: i64,
}

impl AffineRoot {
    /// The finite simple root `alpha_i` (i >= 1) or `alpha_0 = delta - theta`.
    pub fn simple(datum: &CartanDatum, i: usize) -> Self {
        if i == 0 {
            AffineRoot {
                beta: datum.theta.iter().map(|&c| -c).collect(),
                level: 1,
            }
        } else {
            let mut beta = vec![0i64; datum.rank];
            beta[i - 1] = 1;
            AffineRoot { beta, level: 0 }
        }
    }

    pub fn is_real(&self) -> bool {
        self.beta.iter().any(|&c| c != 0)
    }

    /// Positive iff `n > 0`, or `n = 0` and the finite part is a positive root.
    pub fn is_positive(&self) -> bool {
        if self.level != 0 {
            return self.level > 0;
        }
        // A nonzero finite root has all coordinates of one sign.
        self.beta.iter().any(|&c| c > 0)
    }
}

/// An affine weight in the fundamental-weight basis: integer coefficients
/// `c_0..c_r` of `Lambda_0..Lambda_r` plus an exact rational multiple of
/// `delta`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AffineWeight {
    pub coeffs: Vec<i64>,
    pub delta_coeff: Ratio<i64>,
}

impl AffineWeight {
    pub fn zero(rank: usize) -> Self {
        AffineWeight {
            coeffs: vec![0; rank + 1],
            delta_coeff: Ratio::from_integer(0),
        }
    }

    pub fn new(coeffs: Vec<i64>, delta_coeff: Ratio<i64>) -> Self {
        AffineWeight {
            coeffs,
            delta_coeff,
        }
    }

    /// `Lambda_i` for `i` in `0..=rank`.
    pub fn fundamental(rank: usize, i: usize) -> Self {
        let mut w = AffineWeight::zero(rank);
        w.coeffs[i] = 1;
        w
    }

    /// `rho^ = sum of all fundamental weights` (delta coefficient 0).
    pub fn rho_hat(rank: usize) -> Self {
        AffineWeight {
            coeffs: vec![1; rank + 1],
            delta_coeff: Ratio::from_integer(0),
        }
    }

    pub fn delta(rank: usize) -> Self {
        AffineWeight {
            coeffs: vec![0; rank + 1],
            delta_coeff: Ratio::from_integer(1),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        AffineWeight {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
            delta_coeff: self.delta_coeff + other.delta_coeff,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        AffineWeight {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
            delta_coeff: self.delta_coeff - other.delta_coeff,
        }
    }

    /// Level `kappa(mu) = <mu, K> = sum a_i^v c_i` with `a_0^v = 1`.
    pub fn level(&self, datum: &CartanDatum) -> i64 {
        (0..=datum.rank)
            .map(|i| datum.comark(i) * self.coeffs[i])
            .sum()
    }

    /// Pairing with an `h^`-vector; exact rational (the only rational
    /// contribution is `delta_coeff * d_coeff`).
    pub fn pairing(&self, datum: &CartanDatum, h: &HhatVector) -> Ratio<i64> {
        let mut s: i64 = 0;
        for j in 1..=datum.rank {
            s += h.gamma[j - 1] * self.coeffs[j];
        }
        s += h.k_coeff * self.level(datum);
        Ratio::from_integer(s) + self.delta_coeff * Ratio::from_integer(h.d_coeff)
    }

    /// Pairing with the coroot `gamma^v = beta^v + nK` of a real affine root
    /// (simply-laced: `beta^v` has the same coordinates as `beta`).
    pub fn pairing_affine_coroot(&self, datum: &CartanDatum, root: &AffineRoot) -> Ratio<i64> {
        let h = HhatVector {
            gamma: root.beta.clone(),
            k_coeff: root.level,
            d_coeff: 0,
        };
        self.pairing(datum, &h)
    }

    pub fn is_dominant(&self) -> bool {
        self.coeffs.iter().all(|&c| c >= 0)
    }

    pub fn is_quasi_dominant(&self) -> bool {
        self.coeffs.iter().skip(1).all(|&c| c >= 0)
    }

    /// Reflection `s_i(mu) = mu - <mu, alpha_i^v> alpha_i` for an affine node
    /// `i` in `0..=rank`, computed in fundamental-weight coordinates.
    pub fn simple_reflect(&self, datum: &CartanDatum, i: usize) -> Self {
        let c = self.coeffs[i];
        if c == 0 {
            return self.clone();
        }
        let mut out = self.clone();
        for k in 0..=datum.rank {
            out.coeffs[k] -= c * datum.affine_cartan(k, i);
        }
        if i == 0 {
            out.delta_coeff -= Ratio::from_integer(c);
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "coeffs": self.coeffs,
            "delta": format!("{}/{}", self.delta_coeff.numer(), self.delta_coeff.denom()),
        })
    }
}

/// Checked pairing of a weight with an `h^`-vector; rejects operands whose
/// coordinate dimensions do not match the datum.
pub fn pairing(datum: &CartanDatum, mu: &AffineWeight, h: &HhatVector) -> Result<Ratio<i64>> {
    if mu.coeffs.len() != datum.rank + 1 || h.gamma.len() != datum.rank {
        return Err(Error::MismatchedDatum(
            datum.label.to_string(),
            format!(
                "weight/vector of dimensions {}/{}",
                mu.coeffs.len(),
                h.gamma.len()
            ),
        ));
    }
    Ok(mu.pairing(datum, h))
}

/// Regular/singular, integrality and dominance classification of a weight.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WeightClass {
    pub regular: bool,
    pub integral: bool,
    pub dominant: bool,
    pub quasi_dominant: bool,
}

/// Move `mu` into the dominant chamber by simple reflections (smallest
/// descent first) and return the dominant representative.
///
/// Terminates for every integral weight with nonzero level; for level zero
/// only the finite reflections act on the finite coordinates, and the loop
/// restricted to nodes `1..=rank` terminates.
pub fn dominant_representative(datum: &CartanDatum, mu: &AffineWeight) -> AffineWeight {
    let level = mu.level(datum);
    let mut cur = if level < 0 {
        AffineWeight {
            coeffs: mu.coeffs.iter().map(|c| -c).collect(),
            delta_coeff: -mu.delta_coeff,
        }
    } else {
        mu.clone()
    };
    let nodes: Vec<usize> = if level == 0 {
        (1..=datum.rank).collect()
    } else {
        (0..=datum.rank).collect()
    };
    loop {
        let mut moved = false;
        for &i in &nodes {
            if cur.coeffs[i] < 0 {
                cur = cur.simple_reflect(datum, i);
                moved = true;
                break;
            }
        }
        if !moved {
            return cur;
        }
    }
}

/// Classify a weight exactly.
///
/// Regularity is decided on the dominant representative: an integral weight
/// is regular iff its dominant representative pairs nonzero with every
/// simple affine coroot (for nonzero level) resp. every finite simple coroot
/// (for level zero, where `<mu, (alpha + n delta)^v> = <mu, alpha^v>`).
pub fn classify_weight(datum: &CartanDatum, mu: &AffineWeight) -> WeightClass {
    let dom = dominant_representative(datum, mu);
    let level = mu.level(datum);
    let regular = if level == 0 {
        dom.coeffs.iter().skip(1).all(|&c| c != 0)
    } else {
        dom.coeffs.iter().all(|&c| c != 0)
    };
    WeightClass {
        regular,
        integral: true,
        dominant: mu.is_dominant(),
        quasi_dominant: mu.is_quasi_dominant(),
    }
}
