//! Truncated character tables of irreducible highest-weight modules, in the
//! normalization where the table lists the coefficients of the exponentials
//! `e^{w(Lambda + rho^)}` in the product of the Weyl denominator with the
//! character (the denominator itself is never expanded).
//!
//! Three routes produce the same merged table and are compared exactly:
//!
//! * [`char_closed_form`]: the subregular closed forms
//!   `eps(u w_i) <Lambda_i, gamma + |gamma|^2/2 K>` (D/E) and the z-count
//!   sums (type A);
//! * [`char_kac_wakimoto`]: the singular-case shape
//!   `1/2 eps(u) (<alpha, gamma> + 1)` (D/E) resp. the indicator sums
//!   (type A), valid in case (b) only;
//! * [`char_kl_oracle`]: brute force via parabolic inverse
//!   Kazhdan-Lusztig polynomials at `q = 1`.
//!
//! Exponents are merged by exact weight equality; distinct `(u, gamma)`
//! presentations of one exponent (the singular case has exactly two) are
//! accumulated so every reported coefficient is an integer. A merged
//! exponent is marked *complete* when all of its presentations lie inside
//! the enumerated truncation; comparisons are restricted to exponents
//! complete in both tables.

use num_rational::Ratio;
use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::affine_weyl::{
    longest_coset_element, stabilizer, subregular_w, AffineWeylElement, FinitePart,
};
use crate::hecke_kl::AntisphericalEngine;
use crate::root_data::{AffineRoot, AffineWeight, CartanDatum, HhatVector, TypeLabel};
use crate::subregular::m_closed;
use crate::{Error, Result};

/// Which of the two families of valid `(lambda, i)` pairs this one is in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CaseTag {
    /// `lambda + rho^` regular dominant: any subregular index is valid.
    RegularA,
    /// `lambda = -Lambda_i + sum_{k != i} m_k Lambda_k + x delta`.
    SingularB,
}

/// Route used to produce a truncation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    ClosedForm,
    KacWakimoto,
    KlOracle,
}

impl std::fmt::Display for Route {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Route::ClosedForm => write!(f, "closed"),
            Route::KacWakimoto => write!(f, "kw"),
            Route::KlOracle => write!(f, "kl"),
        }
    }
}

/// A validated `(lambda, i)` pair together with everything the character
/// routes need.
#[derive(Clone, Debug)]
pub struct HighestWeightSpec {
    pub datum: Arc<CartanDatum>,
    /// The dot-dominant representative.
    pub lambda: AffineWeight,
    /// Subregular index (`Z` in type A, `0..=rank` in D/E).
    pub index: i64,
    /// The subregular element `w_i`.
    pub w: AffineWeylElement,
    /// The highest weight `Lambda = w_i^{-1} ∘ lambda`.
    pub big_lambda: AffineWeight,
    pub case: CaseTag,
    /// Case (b): the finite positive root `alpha = w_i^{-1}(alpha_i) + delta`.
    pub alpha: Option<AffineRoot>,
    /// Case (b): the affine node whose reflection stabilizes `lambda + rho^`.
    pub stab_node: Option<usize>,
    /// Case (b): the reflection `w_i^{-1} s_node w_i` stabilizing `Lambda + rho^`.
    pub sigma: Option<AffineWeylElement>,
}

impl HighestWeightSpec {
    /// `lambda + rho^`.
    pub fn shifted_dominant(&self) -> AffineWeight {
        self.lambda.add(&AffineWeight::rho_hat(self.datum.rank))
    }

    /// `Lambda + rho^`.
    pub fn shifted_highest(&self) -> AffineWeight {
        self.big_lambda.add(&AffineWeight::rho_hat(self.datum.rank))
    }
}

/// The affine node carrying the simple root `alpha_i` for a subregular
/// index: `i` itself in D/E, the residue `[i]` in type A.
fn node_of_index(datum: &CartanDatum, i: i64) -> usize {
    match datum.label {
        TypeLabel::A(n) => i.rem_euclid(n as i64 + 1) as usize,
        _ => i as usize,
    }
}

/// Validate a `(lambda, i)` pair and classify it into case (a) or (b).
///
/// Requirements: `lambda` integral with `lambda + rho^` dominant of positive
/// level, and `w_i` the longest element of its dot-stabilizer coset, which
/// pins the stabilizer to be trivial or `{1, s_i}`.
pub fn validate_pair(
    datum: &Arc<CartanDatum>,
    lambda: &AffineWeight,
    i: i64,
    window: usize,
) -> Result<HighestWeightSpec> {
    if lambda.coeffs.len() != datum.rank + 1 {
        return Err(Error::InvalidPair(format!(
            "lambda has {} coefficients, expected {}",
            lambda.coeffs.len(),
            datum.rank + 1
        )));
    }
    let shifted = lambda.add(&AffineWeight::rho_hat(datum.rank));
    if !shifted.is_dominant() {
        return Err(Error::InvalidPair(format!(
            "lambda + rho^ must be dominant; coefficients {:?}",
            shifted.coeffs
        )));
    }
    if shifted.level(datum) <= 0 {
        return Err(Error::InvalidPair(format!(
            "lambda + rho^ must have positive level, got {}",
            shifted.level(datum)
        )));
    }
    let stab = stabilizer(datum, lambda)?;
    let w = subregular_w(datum, i, window)?;
    if !longest_coset_element(datum, lambda, &w)? {
        let lw = w.length();
        let offending: Vec<usize> = stab
            .iter()
            .copied()
            .filter(|&j| {
                AffineWeylElement::simple(datum, j)
                    .multiply(&w)
                    .unwrap()
                    .length()
                    > lw
            })
            .collect();
        return Err(Error::InvalidPair(format!(
            "w_i is not longest in its stabilizer coset; offending simple indices {offending:?} \
             (stabilizer must be trivial or {{1, s_i}})"
        )));
    }
    let big_lambda = w.inverse().dot_action(lambda);
    if !big_lambda.is_quasi_dominant() {
        return Err(Error::InvalidPair(format!(
            "Lambda = w_i^{{-1}} ∘ lambda is not quasi-dominant: {:?}",
            big_lambda.coeffs
        )));
    }

    let node = node_of_index(datum, i);
    let (case, alpha, stab_node, sigma) = if stab.is_empty() {
        (CaseTag::RegularA, None, None, None)
    } else {
        debug_assert_eq!(stab, vec![node]);
        // alpha = w_i^{-1}(alpha_node) + delta. In types D/E this is always
        // a finite positive root with (delta - alpha) orthogonal to
        // Lambda + rho^. In type A the same holds only while the word of
        // w_i stays inside one lap of the cycle (|i| < n - 1); beyond that
        // the orthogonal root is m delta - beta with m >= 2 and no alpha of
        // the Kac-Wakimoto shape exists (the indicator route applies
        // instead).
        let ar = w.inverse().act_on_root(&AffineRoot::simple(datum, node));
        let candidate = AffineRoot {
            beta: ar.beta,
            level: ar.level + 1,
        };
        let alpha = if candidate.level == 0 && candidate.is_positive() {
            // (delta - alpha, Lambda + rho^) = 0, i.e.
            // <Lambda + rho^, K - alpha^v> = 0.
            let shifted_big = big_lambda.add(&AffineWeight::rho_hat(datum.rank));
            let coroot = HhatVector {
                gamma: candidate.beta.iter().map(|c| -c).collect(),
                k_coeff: 1,
                d_coeff: 0,
            };
            if shifted_big.pairing(datum, &coroot) != Ratio::from_integer(0) {
                return Err(Error::InvalidPair(
                    "internal: (delta - alpha, Lambda + rho^) != 0".into(),
                ));
            }
            Some(candidate)
        } else if datum.label.is_type_a() {
            None
        } else {
            return Err(Error::InvalidPair(format!(
                "w_i^{{-1}}(alpha_i) + delta is not a finite positive root: {candidate:?}"
            )));
        };
        let s_node = AffineWeylElement::simple(datum, node);
        let sigma = w.inverse().multiply(&s_node)?.multiply(&w)?;
        (CaseTag::SingularB, alpha, Some(node), Some(sigma))
    };

    Ok(HighestWeightSpec {
        datum: datum.clone(),
        lambda: lambda.clone(),
        index: i,
        w,
        big_lambda,
        case,
        alpha,
        stab_node,
        sigma,
    })
}

/// `(u word, gamma)` presentations recorded per exponent.
pub type ProvenanceMap = BTreeMap<AffineWeight, Vec<(Vec<usize>, Vec<i64>)>>;

/// One truncated table of merged coefficients.
#[derive(Clone, Debug)]
pub struct CharacterTruncation {
    pub route: Route,
    pub radius: i64,
    /// Merged integer coefficient per exponent (zeros dropped).
    pub merged: BTreeMap<AffineWeight, i64>,
    /// Exponents all of whose presentations lie inside the truncation.
    pub complete: BTreeSet<AffineWeight>,
    /// Optional `(u word, gamma)` provenance per exponent.
    pub provenance: Option<ProvenanceMap>,
}

impl CharacterTruncation {
    pub fn coefficient(&self, exponent: &AffineWeight) -> i64 {
        self.merged.get(exponent).copied().unwrap_or(0)
    }
}

/// Precomputed contragredient action of one group element on weights.
struct WeightActor {
    coroot_images: Vec<HhatVector>,
    d_image: HhatVector,
}

impl WeightActor {
    fn new(datum: &CartanDatum, w: &AffineWeylElement) -> Self {
        let w_inv = w.inverse();
        let coroot_images = (0..=datum.rank)
            .map(|i| w_inv.act_on_cartan(&HhatVector::coroot(datum, i)))
            .collect();
        let d_image = w_inv.act_on_cartan(&HhatVector::d(datum.rank));
        WeightActor {
            coroot_images,
            d_image,
        }
    }

    fn act(&self, datum: &CartanDatum, mu: &AffineWeight) -> AffineWeight {
        let coeffs = self
            .coroot_images
            .iter()
            .map(|v| {
                let p = mu.pairing(datum, v);
                debug_assert!(p.is_integer());
                p.to_integer()
            })
            .collect();
        AffineWeight {
            coeffs,
            delta_coeff: mu.pairing(datum, &self.d_image),
        }
    }
}

/// The finite Weyl group as elements with reduced words and signs.
fn finite_weyl_group(datum: &Arc<CartanDatum>) -> Vec<(AffineWeylElement, Vec<usize>, i64)> {
    let id = AffineWeylElement::identity(datum);
    let mut seen: BTreeMap<FinitePart, (AffineWeylElement, Vec<usize>, i64)> = BTreeMap::new();
    seen.insert(id.u.clone(), (id.clone(), Vec::new(), 1));
    let mut frontier = vec![(id, Vec::new(), 1i64)];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for (w, word, sign) in &frontier {
            for i in 1..=datum.rank {
                let swi = w.multiply(&AffineWeylElement::simple(datum, i)).unwrap();
                if !seen.contains_key(&swi.u) {
                    let mut nw = word.clone();
                    nw.push(i);
                    seen.insert(swi.u.clone(), (swi.clone(), nw.clone(), -sign));
                    next.push((swi, nw, -sign));
                }
            }
        }
        frontier = next;
    }
    seen.into_values().collect()
}

/// Integer determinant of a small square matrix.
#[allow(clippy::needless_range_loop)]
fn int_det(mut a: Vec<Vec<i128>>) -> i128 {
    let n = a.len();
    let mut det = 1i128;
    for col in 0..n {
        let Some(piv) = (col..n).find(|&i| a[i][col] != 0) else {
            return 0;
        };
        if piv != col {
            a.swap(col, piv);
            det = -det;
        }
        for i in col + 1..n {
            while a[i][col] != 0 {
                let q = a[i][col] / a[col][col];
                if q != 0 {
                    for j in col..n {
                        let sub = q * a[col][j];
                        a[i][j] -= sub;
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

fn isqrt(v: i128) -> i64 {
    if v < 0 {
        return -1;
    }
    let mut x = (v as f64).sqrt() as i128 + 2;
    while x * x > v {
        x -= 1;
    }
    x as i64
}

/// All lattice points `gamma` with `|gamma|^2 <= radius`, enumerated from an
/// exact bounding box and filtered by the integer quadratic form.
pub fn lattice_ball(datum: &CartanDatum, radius: i64) -> Vec<Vec<i64>> {
    assert!(radius >= 0);
    let r = datum.rank;
    let full: Vec<Vec<i128>> = (0..r)
        .map(|i| (0..r).map(|j| datum.cartan[i][j] as i128).collect())
        .collect();
    let det = int_det(full.clone());
    assert!(det > 0);
    // x_i^2 <= radius * (A^{-1})_{ii} = radius * det(minor_ii) / det(A).
    let mut bounds = Vec::with_capacity(r);
    for i in 0..r {
        let minor: Vec<Vec<i128>> = (0..r)
            .filter(|&a| a != i)
            .map(|a| (0..r).filter(|&b| b != i).map(|b| full[a][b]).collect())
            .collect();
        let minor_det = if minor.is_empty() { 1 } else { int_det(minor) };
        let bound = isqrt((radius as i128 * minor_det) / det) + 1;
        bounds.push(bound);
    }
    let mut out = Vec::new();
    let mut cur = vec![0i64; r];
    enumerate_box(datum, &bounds, radius, 0, &mut cur, &mut out);
    out.sort();
    out
}

fn enumerate_box(
    datum: &CartanDatum,
    bounds: &[i64],
    radius: i64,
    idx: usize,
    cur: &mut Vec<i64>,
    out: &mut Vec<Vec<i64>>,
) {
    if idx == bounds.len() {
        if datum.norm_sq_vec(cur) <= radius {
            out.push(cur.clone());
        }
        return;
    }
    for v in -bounds[idx]..=bounds[idx] {
        cur[idx] = v;
        enumerate_box(datum, bounds, radius, idx + 1, cur, out);
    }
    cur[idx] = 0;
}

/// Accumulator for merged tables with exact half-integer bookkeeping.
struct Merger {
    /// Coefficients in half-units.
    half_units: BTreeMap<AffineWeight, i64>,
    complete: BTreeSet<AffineWeight>,
    provenance: Option<ProvenanceMap>,
}

impl Merger {
    fn new(with_provenance: bool) -> Self {
        Merger {
            half_units: BTreeMap::new(),
            complete: BTreeSet::new(),
            provenance: if with_provenance {
                Some(BTreeMap::new())
            } else {
                None
            },
        }
    }

    fn add(&mut self, expo: AffineWeight, half_units: i64, word: &[usize], gamma: &[i64]) {
        if let Some(prov) = &mut self.provenance {
            prov.entry(expo.clone())
                .or_default()
                .push((word.to_vec(), gamma.to_vec()));
        }
        if half_units != 0 {
            let e = self.half_units.entry(expo).or_insert(0);
            *e += half_units;
        }
    }

    fn mark_complete(&mut self, expo: AffineWeight) {
        self.complete.insert(expo);
    }

    fn finish(self, route: Route, radius: i64) -> CharacterTruncation {
        let mut merged = BTreeMap::new();
        for (expo, h) in self.half_units {
            if h == 0 {
                continue;
            }
            // Only complete exponents are guaranteed integral; incomplete
            // boundary exponents keep their raw half-unit value but are
            // excluded from comparisons.
            if self.complete.contains(&expo) {
                assert!(
                    h % 2 == 0,
                    "merged coefficient is not an integer at {expo:?}"
                );
            }
            if h % 2 == 0 {
                merged.insert(expo, h / 2);
            }
        }
        CharacterTruncation {
            route,
            radius,
            merged,
            complete: self.complete,
            provenance: self.provenance,
        }
    }
}

/// Closed-form route. Emits, for every `u` in the finite Weyl group and
/// every `gamma` with `|gamma|^2 <= radius`, the coefficient
/// `eps(u w_i) <Lambda_i, gamma + |gamma|^2/2 K>` (D/E) resp. the z-count
/// sum (type A) at the exponent `u t_gamma w_i(Lambda + rho^)`.
pub fn char_closed_form(
    spec: &HighestWeightSpec,
    radius: i64,
    with_provenance: bool,
) -> Result<CharacterTruncation> {
    let datum = &spec.datum;
    let shifted_dom = spec.shifted_dominant();
    let sign_w = spec.w.sign();
    let ball = lattice_ball(datum, radius);
    let group = finite_weyl_group(datum);
    let actors: Vec<(WeightActor, &Vec<usize>, i64)> = group
        .iter()
        .map(|(u, word, sign)| (WeightActor::new(datum, u), word, *sign))
        .collect();

    let mut merger = Merger::new(with_provenance);
    for gamma in &ball {
        let neg: Vec<i64> = gamma.iter().map(|c| -c).collect();
        // <Lambda_i, gamma + |gamma|^2/2 K> = m^{w_{-gamma}}_{w_i}.
        let core = m_closed(datum, spec.index, &neg)?;
        let t = AffineWeylElement::translation(datum, gamma.clone());
        let t_shifted = t.act_on_weight(&shifted_dom);
        for (actor, word, sign_u) in &actors {
            let expo = actor.act(datum, &t_shifted);
            merger.add(expo.clone(), 2 * sign_u * sign_w * core, word, gamma);
            // Either presentation of an exponent keeps |gamma|^2, so the
            // whole ball is presentation-closed.
            merger.mark_complete(expo);
        }
    }
    Ok(merger.finish(Route::ClosedForm, radius))
}

/// Kac-Wakimoto route, case (b) only.
///
/// Types D/E emit `1/2 eps(u) (<alpha, gamma> + 1)` at
/// `u t_gamma(Lambda + rho^)`; the two presentations of each exponent merge
/// to an integer. Type A emits the indicator of `<Lambda-bar_{n-1}, gamma> >= 0`
/// (for `i >= 0`; `Lambda-bar_1` for `i <= 0`) times `eps(u)`. Exponents are
/// complete when the partner presentation also lies in the ball.
pub fn char_kac_wakimoto(
    spec: &HighestWeightSpec,
    radius: i64,
    with_provenance: bool,
) -> Result<CharacterTruncation> {
    if spec.case != CaseTag::SingularB {
        return Err(Error::InvalidPair(
            "the Kac-Wakimoto shape is the singular-case formula; a regular-case pair was given"
                .into(),
        ));
    }
    let datum = &spec.datum;
    let shifted_big = spec.shifted_highest();
    let sigma = spec.sigma.as_ref().unwrap();
    let type_a = datum.label.is_type_a();
    let alpha = match (&spec.alpha, type_a) {
        (Some(a), _) if !type_a => Some(a),
        (_, true) => None,
        _ => unreachable!("case (b) D/E always carries alpha"),
    };
    let ball = lattice_ball(datum, radius);
    let in_ball = |g: &[i64]| datum.norm_sq_vec(g) <= radius;
    let group = finite_weyl_group(datum);

    let mut merger = Merger::new(with_provenance);
    for gamma in &ball {
        let t = AffineWeylElement::translation(datum, gamma.clone());
        let t_shifted = t.act_on_weight(&shifted_big);
        for (u, word, sign_u) in &group {
            let expo = u.act_on_weight(&t_shifted);
            let half_units = if type_a {
                // Indicator sum: full units, no 1/2.
                let pair = if spec.index >= 0 {
                    gamma[datum.rank - 1]
                } else {
                    gamma[0]
                };
                2 * sign_u * i64::from(pair >= 0)
            } else {
                sign_u * (datum.form(&alpha.unwrap().beta, gamma) + 1)
            };
            merger.add(expo.clone(), half_units, word, gamma);
            // Partner presentation: u t_gamma sigma = t_{g''} u'' with
            // gamma'' = u''^{-1}(g'').
            let partner = u.multiply(&t)?.multiply(sigma)?;
            let gamma_pres = partner.u.inverse(datum).apply(datum, &partner.gamma);
            if in_ball(&gamma_pres) {
                merger.mark_complete(expo);
            }
        }
    }
    Ok(merger.finish(Route::KacWakimoto, radius))
}

/// Brute-force route through the Hecke algebra: coefficients
/// `eps(u w_nu) m^{w_gamma}_{w_nu}(1)` at `u t_{-gamma}(lambda + rho^)`,
/// with `m` the parabolic inverse KL polynomials. `gamma` runs over the ball
/// intersected with the length cap; the singular-case stabilizer sum happens
/// through exponent merging.
pub fn char_kl_oracle(
    spec: &HighestWeightSpec,
    radius: i64,
    engine: &mut AntisphericalEngine,
    with_provenance: bool,
) -> Result<CharacterTruncation> {
    char_kl_general(
        &spec.datum,
        &spec.lambda,
        &spec.w,
        spec.stab_node,
        radius,
        engine,
        with_provenance,
    )
}

/// KL route for an arbitrary minimal coset representative `v` (used by the
/// exploratory comparisons where `v` is not a subregular `w_i`).
pub fn char_kl_general(
    datum: &Arc<CartanDatum>,
    lambda: &AffineWeight,
    v: &AffineWeylElement,
    stab_node: Option<usize>,
    radius: i64,
    engine: &mut AntisphericalEngine,
    with_provenance: bool,
) -> Result<CharacterTruncation> {
    let cap = engine.cap();
    let nu = v.gamma.clone();
    if engine.coset_length(&nu) > cap {
        return Err(Error::CapExceeded(format!(
            "l(w_nu) = {} exceeds the KL cap {cap}",
            engine.coset_length(&nu)
        )));
    }
    let shifted_dom = lambda.add(&AffineWeight::rho_hat(datum.rank));
    let sign_v = v.sign();
    let ball = lattice_ball(datum, radius);
    let group = finite_weyl_group(datum);
    let actors: Vec<(WeightActor, &Vec<usize>, i64)> = group
        .iter()
        .map(|(u, word, sign)| (WeightActor::new(datum, u), word, *sign))
        .collect();

    let mut merger = Merger::new(with_provenance);
    for gamma in &ball {
        if engine.coset_length(gamma) > cap {
            continue;
        }
        let col = engine.parabolic_inverse(gamma)?;
        let m_at_one = col.get(&nu).map(|p| p.eval_at_one()).unwrap_or(0);
        let neg: Vec<i64> = gamma.iter().map(|c| -c).collect();
        let t_neg = AffineWeylElement::translation(datum, neg.clone());
        // The partner presentation of (u, t_{-gamma}) under the stabilizer
        // reflection is (u', t_{-gamma'}) with gamma' independent of u:
        // gamma' = (t_{-gamma} s_node)^{-1}.gamma. The exponent is complete
        // only if the partner is inside both the ball and the length cap.
        let partner_ok = match stab_node {
            None => true,
            Some(node) => {
                let s = AffineWeylElement::simple(datum, node);
                let partner_gamma = t_neg.multiply(&s)?.inverse().gamma;
                datum.norm_sq_vec(&partner_gamma) <= radius
                    && engine.coset_length(&partner_gamma) <= cap
            }
        };
        let t_shifted = t_neg.act_on_weight(&shifted_dom);
        for (actor, word, sign_u) in &actors {
            let expo = actor.act(datum, &t_shifted);
            merger.add(expo.clone(), 2 * sign_u * sign_v * m_at_one, word, &neg);
            if partner_ok {
                merger.mark_complete(expo);
            }
        }
    }
    Ok(merger.finish(Route::KlOracle, radius))
}

/// Result of comparing two truncations on their common complete exponents.
#[derive(Clone, Debug)]
pub struct CompareReport {
    pub exponents_compared: usize,
    pub max_abs_diff: i64,
    pub mismatches: Vec<(AffineWeight, i64, i64)>,
}

impl CompareReport {
    pub fn passed(&self) -> bool {
        self.max_abs_diff == 0
    }
}

/// Compare two truncations of the same spec: exact coefficient equality on
/// the intersection of their complete exponent sets.
pub fn compare(a: &CharacterTruncation, b: &CharacterTruncation) -> CompareReport {
    let mut report = CompareReport {
        exponents_compared: 0,
        max_abs_diff: 0,
        mismatches: Vec::new(),
    };
    for expo in a.complete.intersection(&b.complete) {
        let ca = a.coefficient(expo);
        let cb = b.coefficient(expo);
        report.exponents_compared += 1;
        let diff = (ca - cb).abs();
        if diff > 0 {
            report.max_abs_diff = report.max_abs_diff.max(diff);
            report.mismatches.push((expo.clone(), ca, cb));
        }
    }
    report
}

/// Criterion-style invariants of a single table: the coefficient of
/// `e^{Lambda + rho^}` and the antisymmetry `c(u t_gamma) = eps(u) c(t_gamma)`.
#[derive(Clone, Debug)]
pub struct TableInvariants {
    pub highest_coefficient: i64,
    pub highest_complete: bool,
    pub antisymmetry_checked: usize,
    pub antisymmetry_failures: usize,
}

/// Verify the normalization and W-antisymmetry of a merged table.
///
/// Antisymmetry is checked on presentations: for every `u` and every
/// `gamma` in the ball, the merged coefficients at the exponents of
/// `(u, gamma)` and `(e, gamma)` must satisfy `c_u = eps(u) c_e` whenever
/// both exponents are complete.
pub fn verify_table_invariants(
    spec: &HighestWeightSpec,
    table: &CharacterTruncation,
) -> Result<TableInvariants> {
    let datum = &spec.datum;
    let highest = spec.shifted_highest();
    let highest_coefficient = table.coefficient(&highest);
    let highest_complete = table.complete.contains(&highest);

    let shifted_dom = spec.shifted_dominant();
    let ball = lattice_ball(datum, table.radius);
    let group = finite_weyl_group(datum);
    let mut checked = 0;
    let mut failures = 0;
    for gamma in &ball {
        let t = AffineWeylElement::translation(datum, gamma.clone());
        let base_expo = t.act_on_weight(&shifted_dom);
        if !table.complete.contains(&base_expo) {
            continue;
        }
        let base = table.coefficient(&base_expo);
        for (u, _, sign_u) in &group {
            let expo = u.act_on_weight(&t.act_on_weight(&shifted_dom));
            if !table.complete.contains(&expo) {
                continue;
            }
            checked += 1;
            if table.coefficient(&expo) != sign_u * base {
                failures += 1;
            }
        }
    }
    Ok(TableInvariants {
        highest_coefficient,
        highest_complete,
        antisymmetry_checked: checked,
        antisymmetry_failures: failures,
    })
}

/// Kac-Wakimoto-shape table for an explicitly given `(Lambda, alpha, sigma)`
/// (exploratory use: conjectural cases that are not covered by the
/// subregular closed form). D/E half-unit convention.
pub fn kw_table_general(
    datum: &Arc<CartanDatum>,
    shifted_big: &AffineWeight,
    alpha: &AffineRoot,
    sigma: &AffineWeylElement,
    radius: i64,
    with_provenance: bool,
) -> Result<CharacterTruncation> {
    let ball = lattice_ball(datum, radius);
    let in_ball = |g: &[i64]| datum.norm_sq_vec(g) <= radius;
    let group = finite_weyl_group(datum);
    let mut merger = Merger::new(with_provenance);
    for gamma in &ball {
        let t = AffineWeylElement::translation(datum, gamma.clone());
        let t_shifted = t.act_on_weight(shifted_big);
        for (u, word, sign_u) in &group {
            let expo = u.act_on_weight(&t_shifted);
            let half_units = sign_u * (datum.form(&alpha.beta, gamma) + 1);
            merger.add(expo.clone(), half_units, word, gamma);
            let partner = u.multiply(&t)?.multiply(sigma)?;
            let gamma_pres = partner.u.inverse(datum).apply(datum, &partner.gamma);
            if in_ball(&gamma_pres) {
                merger.mark_complete(expo);
            }
        }
    }
    Ok(merger.finish(Route::KacWakimoto, radius))
}
