//! Closed-form multiplicity columns for the subregular cell and the lattice
//! models they come from.
//!
//! Types D/E: the quotient module is `h^_Z = Z Q^v + Z K + Z d` and the
//! multiplicity of the canonical image indexed by node `i` in the translate
//! `t_gamma(d)` is the exact integer
//! `m^{w_gamma}_{w_i} = <Lambda_i, -gamma + |gamma|^2/2 K>`.
//!
//! Type A: the quotient module is `h_{infty,Z} + Z d` with basis
//! `eps_i (i in Z)` and the multiplicities are the lattice-point counts
//! `m^{w_gamma}_{w_i} = -sum_k z_i(<eps_k, gamma> eps_k)`.
//!
//! Both closed forms are cross-verified against the parabolic inverse KL
//! polynomials at `q = 1` by [`verify_oracle_equality`]; the module-model
//! route [`decompose_translate`] recovers the same columns by pure lattice
//! arithmetic.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::affine_weyl::{subregular_nu, AffineWeylElement, PeriodicPermutation};
use crate::hecke_kl::AntisphericalEngine;
use crate::root_data::{CartanDatum, HhatVector, TypeLabel};
use crate::{Error, Result};

/// The counting function `z_i(a eps_k)` for `sl_n`:
/// `|Z_{<=i} ∩ [k, k+(a-1)n] ∩ (k+nZ)|` for `a >= 0` and
/// `-|Z_{<=i} ∩ [k+an, k-n] ∩ (k+nZ)|` for `a <= 0` (both zero at `a = 0`).
pub fn z_value(i: i64, a: i64, k: i64, n: i64) -> i64 {
    assert!(n >= 3, "z_value requires n >= 3");
    assert!((1..=n).contains(&k), "z_value requires 1 <= k <= n");
    let fd = (i - k).div_euclid(n);
    if a >= 0 {
        // Members k + mn with 0 <= m <= a-1 and m <= (i-k)/n.
        let hi = std::cmp::min(a - 1, fd);
        std::cmp::max(0, hi + 1)
    } else {
        // Members k + mn with a <= m <= -1 and m <= (i-k)/n.
        let hi = std::cmp::min(-1, fd);
        -std::cmp::max(0, hi - a + 1)
    }
}

/// The case table of the difference `z_i(-a eps_[i]) - z_i(-a eps_{[i]+1})`
/// for `i` not divisible by `n`: `0` off `[[i]-an, [i]-n]` for `a >= 0`
/// (`-1` inside), and `0` off `[[i], [i]+(-a-1)n]` for `a <= 0` (`1` inside).
pub fn z_difference_case_table(i: i64, a: i64, n: i64) -> i64 {
    assert!(i.rem_euclid(n) != 0, "case table applies to i outside nZ");
    let res = i.rem_euclid(n);
    let inside = |lo: i64, hi: i64| lo <= i && i <= hi;
    if a >= 0 {
        if inside(res - a * n, res - n) {
            -1
        } else {
            0
        }
    } else if inside(res, res + (-a - 1) * n) {
        1
    } else {
        0
    }
}

/// The merged trichotomy form of the same case table; agrees with
/// [`z_difference_case_table`] everywhere.
pub fn z_difference_trichotomy(i: i64, a: i64, n: i64) -> i64 {
    let res = i.rem_euclid(n);
    let inside = |lo: i64, hi: i64| lo <= i && i <= hi;
    if inside(res, res + (-a - 1) * n) {
        1
    } else if inside(res - a * n, res - n) {
        -1
    } else {
        debug_assert!(!inside(res - a * n, res + (-a - 1) * n));
        0
    }
}

/// Closed form for types D/E:
/// `m^{w_gamma}_{w_i} = <Lambda_i, -gamma + |gamma|^2/2 K>
///  = -<Lambda_i, gamma> + (|gamma|^2/2) a_i^v`.
pub fn m_closed_de(datum: &CartanDatum, i: usize, gamma: &[i64]) -> Result<i64> {
    if datum.label.is_type_a() {
        return Err(Error::InvalidArgument(
            "m_closed_de applies to types D and E; use m_closed_a".into(),
        ));
    }
    assert!(i <= datum.rank);
    let half_norm = datum.norm_sq_vec(gamma) / 2;
    let pairing = if i == 0 { 0 } else { gamma[i - 1] };
    Ok(-pairing + half_norm * datum.comark(i))
}

/// Closed form for type A (`gamma` in epsilon coordinates, sum zero):
/// `m^{w_gamma}_{w_i} = -sum_{k=1}^n z_i(<eps_k, gamma> eps_k)`.
pub fn m_closed_a(datum: &CartanDatum, i: i64, gamma_eps: &[i64]) -> Result<i64> {
    let Some(n) = datum.eps_dim() else {
        return Err(Error::InvalidArgument(
            "m_closed_a applies to type A; use m_closed_de".into(),
        ));
    };
    assert_eq!(gamma_eps.len(), n);
    let n = n as i64;
    let mut total = 0;
    for k in 1..=n {
        total += z_value(i, gamma_eps[(k - 1) as usize], k, n);
    }
    Ok(-total)
}

/// Unified closed form taking `gamma` in coroot coordinates.
pub fn m_closed(datum: &CartanDatum, i: i64, gamma: &[i64]) -> Result<i64> {
    if datum.label.is_type_a() {
        let eps = datum.coroot_to_eps(gamma).unwrap();
        m_closed_a(datum, i, &eps)
    } else {
        if i < 0 || i > datum.rank as i64 {
            return Err(Error::InvalidArgument(format!(
                "subregular index {i} outside 0..={}",
                datum.rank
            )));
        }
        m_closed_de(datum, i as usize, gamma)
    }
}

/// Integer vector in `h^_{infty,Z} + Z d`: finitely supported
/// `eps`-coefficients indexed by `Z` plus a `d`-coefficient.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HInftyVector {
    pub eps_coeffs: BTreeMap<i64, i64>,
    pub d_coeff: i64,
}

impl HInftyVector {
    pub fn d() -> Self {
        HInftyVector {
            eps_coeffs: BTreeMap::new(),
            d_coeff: 1,
        }
    }

    pub fn add_eps(&mut self, idx: i64, c: i64) {
        if c == 0 {
            return;
        }
        let entry = self.eps_coeffs.entry(idx).or_insert(0);
        *entry += c;
        if *entry == 0 {
            self.eps_coeffs.remove(&idx);
        }
    }

    /// `alpha_i^v = eps_i - eps_{i+1}` for any `i` in `Z`.
    pub fn simple_coroot_infty(i: i64) -> Self {
        let mut v = HInftyVector::default();
        v.add_eps(i, 1);
        v.add_eps(i + 1, -1);
        v
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&i, &c) in &other.eps_coeffs {
            out.add_eps(i, c);
        }
        out.d_coeff += other.d_coeff;
        out
    }

    pub fn negated(&self) -> Self {
        HInftyVector {
            eps_coeffs: self.eps_coeffs.iter().map(|(&i, &c)| (i, -c)).collect(),
            d_coeff: -self.d_coeff,
        }
    }

    /// Sum of the `eps`-coefficients; zero exactly on `h_{infty,Z} + Z d`.
    pub fn eps_coeff_sum(&self) -> i64 {
        self.eps_coeffs.values().sum()
    }

    /// `<Lambda-bar^infty_i, x> = sum_{l <= i} eps-coefficient at l`.
    pub fn lambda_infty_pairing(&self, i: i64) -> i64 {
        self.eps_coeffs
            .iter()
            .filter(|(&l, _)| l <= i)
            .map(|(_, &c)| c)
            .sum()
    }
}

/// `t_{gamma}(d)` for `gamma` in extended epsilon coordinates (type A):
/// the telescoping chains `t_{a eps_k}(d) = d + eps_k + ... + eps_{k+(a-1)n}`
/// for `a > 0` and `d - eps_{k-n} - ... - eps_{k+an}` for `a < 0`.
pub fn translate_d_eps(n: usize, eps: &[i64]) -> HInftyVector {
    assert_eq!(eps.len(), n);
    let n = n as i64;
    let mut out = HInftyVector::d();
    for (idx, &a) in eps.iter().enumerate() {
        let k = idx as i64 + 1;
        if a > 0 {
            for m in 0..a {
                out.add_eps(k + m * n, 1);
            }
        } else {
            for m in 1..=(-a) {
                out.add_eps(k - m * n, -1);
            }
        }
    }
    out
}

/// The value `t_gamma(d)` in the relevant module model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModelVector {
    /// Types D/E: an element of `h^_Z`.
    DE(HhatVector),
    /// Type A: an element of `h^_{infty,Z} + Z d`.
    A(HInftyVector),
}

/// `t_gamma(d)` (`gamma` in coroot coordinates): `d + gamma - |gamma|^2/2 K`
/// in types D/E, the telescoped epsilon chains in type A.
pub fn model_translate_d(datum: &CartanDatum, gamma: &[i64]) -> ModelVector {
    match datum.label {
        TypeLabel::A(_) => {
            let eps = datum.coroot_to_eps(gamma).unwrap();
            ModelVector::A(translate_d_eps(eps.len(), &eps))
        }
        _ => ModelVector::DE(HhatVector {
            gamma: gamma.to_vec(),
            k_coeff: -datum.norm_sq_vec(gamma) / 2,
            d_coeff: 1,
        }),
    }
}

/// A multiplicity column `i -> m^{w_gamma}_{w_i}`, finitely supported.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MultColumn {
    pub entries: BTreeMap<i64, i64>,
}

impl MultColumn {
    pub fn get(&self, i: i64) -> i64 {
        self.entries.get(&i).copied().unwrap_or(0)
    }

    fn insert_nonzero(&mut self, i: i64, v: i64) {
        if v != 0 {
            self.entries.insert(i, v);
        }
    }
}

/// Expand `t_gamma(d) - d` in simple coroots and negate: the module-model
/// route to the multiplicity column, no KL computation involved.
///
/// Types D/E expand in the basis `alpha_0^v .. alpha_r^v` of `h + Z K`
/// using `K = sum a_i^v alpha_i^v`; type A expands in
/// `alpha_i^v = eps_i - eps_{i+1}, i in Z`, by partial sums.
pub fn decompose_translate(datum: &CartanDatum, gamma: &[i64]) -> MultColumn {
    let mut col = MultColumn::default();
    match model_translate_d(datum, gamma) {
        ModelVector::DE(v) => {
            debug_assert_eq!(v.d_coeff, 1);
            // v - d = (gamma; k): write as c_0 alpha_0^v + sum c_i alpha_i^v
            // with alpha_0^v = K - theta^v; then m_i = -c_i.
            let c0 = v.k_coeff;
            col.insert_nonzero(0, -c0);
            for i in 1..=datum.rank {
                let ci = v.gamma[i - 1] + c0 * datum.theta[i - 1];
                col.insert_nonzero(i as i64, -ci);
            }
        }
        ModelVector::A(v) => {
            debug_assert_eq!(v.d_coeff, 1);
            debug_assert_eq!(v.eps_coeff_sum(), 0, "t_gamma(d) - d lies in h_infty");
            // Partial sums give the coefficients on alpha_i^v.
            if v.eps_coeffs.is_empty() {
                return col;
            }
            let lo = *v.eps_coeffs.keys().next().unwrap();
            let hi = *v.eps_coeffs.keys().next_back().unwrap();
            let mut acc = 0i64;
            for i in lo..hi {
                acc += v.eps_coeffs.get(&i).copied().unwrap_or(0);
                col.insert_nonzero(i, -acc);
            }
        }
    }
    col
}

/// The canonical-basis dictionary of the quotient model: the image of the
/// class indexed by `nu_i` is `-alpha_i^v`, and the unit class maps to `d`.
#[derive(Clone, Debug)]
pub struct CanonicalImages {
    /// Image of the unit canonical class.
    pub d_image: ModelVector,
    /// `(i, nu_i, image of the class indexed by nu_i)`.
    pub entries: Vec<(i64, Vec<i64>, ModelVector)>,
}

/// Tabulate the canonical-basis images over `0..=rank` (D/E) or the
/// symmetric window `[-window, window]` (type A).
pub fn canonical_basis_images(datum: &Arc<CartanDatum>, window: usize) -> Result<CanonicalImages> {
    let type_a = datum.label.is_type_a();
    let indices: Vec<i64> = if type_a {
        (-(window as i64)..=window as i64).collect()
    } else {
        (0..=datum.rank as i64).collect()
    };
    let d_image = if type_a {
        ModelVector::A(HInftyVector::d())
    } else {
        ModelVector::DE(HhatVector::d(datum.rank))
    };
    let mut entries = Vec::new();
    for i in indices {
        let nu = subregular_nu(datum, i, window)?;
        let image = if type_a {
            ModelVector::A(HInftyVector::simple_coroot_infty(i).negated())
        } else {
            let coroot = HhatVector::coroot(datum, i as usize);
            ModelVector::DE(HhatVector::zero(datum.rank).sub(&coroot))
        };
        entries.push((i, nu, image));
    }
    Ok(CanonicalImages { d_image, entries })
}

/// Full Weyl-group action on `h^_{infty,Z} + Z d` (type A): the epsilon part
/// moves by the periodic permutation of `w` and `w(d) = t_gamma(d)`.
pub fn act_hinfty(w: &AffineWeylElement, x: &HInftyVector) -> Result<HInftyVector> {
    let sigma = PeriodicPermutation::from_element(w)?;
    let mut out = HInftyVector::default();
    for (&i, &c) in &x.eps_coeffs {
        out.add_eps(sigma.apply(i), c);
    }
    if x.d_coeff != 0 {
        let ModelVector::A(td) = model_translate_d(&w.datum, &w.gamma) else {
            unreachable!()
        };
        out.d_coeff = x.d_coeff;
        for (&i, &c) in &td.eps_coeffs {
            out.add_eps(i, c * x.d_coeff);
        }
    }
    Ok(out)
}

/// One mismatch found by the oracle sweep.
#[derive(Clone, Debug)]
pub struct OracleMismatch {
    pub gamma: Vec<i64>,
    pub index: i64,
    pub closed_form: i64,
    pub kl_value: i64,
}

/// Report of the closed-form vs. Hecke-oracle sweep.
#[derive(Clone, Debug, Default)]
pub struct OracleReport {
    pub cosets_checked: usize,
    pub pairs_checked: usize,
    pub unit_class_checked: usize,
    pub mismatches: Vec<OracleMismatch>,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Sweep every `gamma` with `l(w_gamma) <= cap` and every subregular index
/// with `l(w_i) <= cap`, comparing the closed form against the parabolic
/// inverse KL polynomial at `q = 1` (exact integer equality). The constant
/// unit-class coefficient of every column is also checked to be 1.
pub fn verify_oracle_equality(datum: &Arc<CartanDatum>, cap: usize) -> Result<OracleReport> {
    let mut engine = AntisphericalEngine::with_cap(datum, cap);
    let cosets = engine.cosets_up_to_length(cap);
    let window = cap + 1;

    let indices: Vec<i64> = if datum.label.is_type_a() {
        // l(w_i) = |i| + 1.
        let hi = cap as i64 - 1;
        (-hi..=hi).collect()
    } else {
        (0..=datum.rank as i64)
            .filter(|&i| {
                crate::affine_weyl::subregular_word(datum, i, window)
                    .map(|word| word.len() <= cap)
                    .unwrap_or(false)
            })
            .collect()
    };
    let nus: Vec<(i64, Vec<i64>)> = indices
        .iter()
        .map(|&i| Ok((i, subregular_nu(datum, i, window)?)))
        .collect::<Result<_>>()?;

    let zero = vec![0i64; datum.rank];
    let mut report = OracleReport::default();
    for (gamma, _) in &cosets {
        let col = engine.parabolic_inverse(gamma)?;
        report.cosets_checked += 1;

        // Unit-class coefficient: m^{w_gamma}_{w_0}(1) = 1 for every gamma.
        let unit = col.get(&zero).map(|p| p.eval_at_one()).unwrap_or(0);
        if unit != 1 {
            report.mismatches.push(OracleMismatch {
                gamma: gamma.clone(),
                index: i64::MIN,
                closed_form: 1,
                kl_value: unit,
            });
        }
        report.unit_class_checked += 1;

        for (i, nu) in &nus {
            let closed = m_closed(datum, *i, gamma)?;
            let kl = col.get(nu).map(|p| p.eval_at_one()).unwrap_or(0);
            if closed != kl {
                report.mismatches.push(OracleMismatch {
                    gamma: gamma.clone(),
                    index: *i,
                    closed_form: closed,
                    kl_value: kl,
                });
            }
            report.pairs_checked += 1;
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affine_weyl::subregular_w;
    use crate::root_data::build_cartan;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn datum(label: &str) -> Arc<CartanDatum> {
        build_cartan(TypeLabel::parse(label).unwrap()).unwrap()
    }

    /// Literal set-count oracle for z, iterating over the interval.
    fn z_naive(i: i64, a: i64, k: i64, n: i64) -> i64 {
        if a >= 0 {
            let (lo, hi) = (k, k + (a - 1) * n);
            (lo..=hi)
                .filter(|j| *j <= i && (j - k).rem_euclid(n) == 0)
                .count() as i64
        } else {
            let (lo, hi) = (k + a * n, k - n);
            -((lo..=hi)
                .filter(|j| *j <= i && (j - k).rem_euclid(n) == 0)
                .count() as i64)
        }
    }

    #[test]
    fn z_examples() {
        // a = 0 gives 0 for all i, k.
        for i in -5..=5 {
            for k in 1..=3 {
                assert_eq!(z_value(i, 0, k, 3), 0);
            }
        }
        // n=3, k=1, a=1: the set is {1}.
        assert_eq!(z_value(0, 1, 1, 3), 0);
        assert_eq!(z_value(1, 1, 1, 3), 1);
    }

    #[test]
    fn z_matches_naive_count() {
        for n in 3..=5i64 {
            for i in -3 * n..=3 * n {
                for a in -10..=10 {
                    for k in 1..=n {
                        assert_eq!(
                            z_value(i, a, k, n),
                            z_naive(i, a, k, n),
                            "i={i} a={a} k={k} n={n}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn z_difference_case_table_holds() {
        for n in 3..=5i64 {
            for i in (-3 * n..=3 * n).filter(|i| i.rem_euclid(n) != 0) {
                for a in -10..=10 {
                    let res = i.rem_euclid(n);
                    let lhs = z_value(i, -a, res, n) - z_value(i, -a, res + 1, n);
                    assert_eq!(lhs, z_difference_case_table(i, a, n), "i={i} a={a} n={n}");
                    assert_eq!(lhs, z_difference_trichotomy(i, a, n), "i={i} a={a} n={n}");
                    assert!(lhs.abs() <= 1);
                }
            }
        }
    }

    #[test]
    fn m_closed_de_examples() {
        let d = datum("D4");
        // gamma = 0: zero column.
        for i in 0..=4 {
            assert_eq!(m_closed_de(&d, i, &[0, 0, 0, 0]).unwrap(), 0);
        }
        // gamma = theta, i = 0: the diagonal normalization m^{w_theta}_{w_0} = 1.
        assert_eq!(m_closed_de(&d, 0, &d.theta).unwrap(), 1);
        // gamma = alpha_j^v: -delta_ij + a_i^v.
        for j in 1..=4usize {
            let mut gamma = vec![0i64; 4];
            gamma[j - 1] = 1;
            for i in 0..=4usize {
                let expected = -if i == j { 1 } else { 0 } + d.comark(i);
                assert_eq!(m_closed_de(&d, i, &gamma).unwrap(), expected);
            }
        }
        // Wrong type rejected.
        let a = datum("A2");
        assert!(m_closed_de(&a, 0, &[1, 0]).is_err());
        assert!(m_closed_a(&d, 0, &[1, 0, 0, -1, 0]).is_err());
    }

    #[test]
    fn m_closed_a_diagonal() {
        let d = datum("A2");
        // gamma = nu_0 (theta-translate), i = 0: diagonal normalization.
        let nu0 = subregular_nu(&d, 0, 12).unwrap();
        assert_eq!(m_closed(&d, 0, &nu0).unwrap(), 1);
        for i in -6i64..=6 {
            let nui = subregular_nu(&d, i, 12).unwrap();
            assert_eq!(m_closed(&d, i, &nui).unwrap(), 1, "diagonal at {i}");
        }
        // gamma = 0: all zero.
        for i in -6i64..=6 {
            assert_eq!(m_closed(&d, i, &[0, 0]).unwrap(), 0);
        }
    }

    #[test]
    fn translate_d_chains() {
        // gamma = 2 eps_1 (extended): d + eps_1 + eps_{1+n}.
        let v = translate_d_eps(3, &[2, 0, 0]);
        let mut expected = HInftyVector::d();
        expected.add_eps(1, 1);
        expected.add_eps(4, 1);
        assert_eq!(v, expected);
        // gamma = -eps_2: d - eps_{2-n}.
        let v = translate_d_eps(3, &[0, -1, 0]);
        let mut expected = HInftyVector::d();
        expected.add_eps(-1, -1);
        assert_eq!(v, expected);
        // gamma = 0 gives d.
        assert_eq!(translate_d_eps(3, &[0, 0, 0]), HInftyVector::d());
    }

    #[test]
    fn decompose_examples() {
        let d4 = datum("D4");
        assert!(decompose_translate(&d4, &[0, 0, 0, 0]).entries.is_empty());
        // gamma = theta: single 1 at index 0 (theta - K = -alpha_0^v).
        let col = decompose_translate(&d4, &d4.theta);
        assert_eq!(col.entries, BTreeMap::from([(0, 1)]));

        // Type A: column equals the z-sum closed form.
        let a2 = datum("A2");
        let col = decompose_translate(&a2, &[1, 0]);
        for i in -8i64..=8 {
            assert_eq!(col.get(i), m_closed(&a2, i, &[1, 0]).unwrap(), "i = {i}");
        }
    }

    #[test]
    fn decompose_equals_closed_form_on_random_lattice_points() {
        // 500 random gamma with |gamma|^2 <= 50 in each of A2, A3, D4, E6.
        for label in ["A2", "A3", "D4", "E6"] {
            let d = datum(label);
            let mut rng = ChaCha8Rng::seed_from_u64(47);
            let mut done = 0;
            while done < 500 {
                let gamma: Vec<i64> = (0..d.rank).map(|_| rng.gen_range(-4i64..=4)).collect();
                if d.norm_sq_vec(&gamma) > 50 {
                    continue;
                }
                done += 1;
                let col = decompose_translate(&d, &gamma);
                if d.label.is_type_a() {
                    let lo = col.entries.keys().next().copied().unwrap_or(0) - 2;
                    let hi = col.entries.keys().next_back().copied().unwrap_or(0) + 2;
                    for i in lo..=hi {
                        assert_eq!(col.get(i), m_closed(&d, i, &gamma).unwrap());
                    }
                } else {
                    for i in 0..=d.rank as i64 {
                        assert_eq!(col.get(i), m_closed(&d, i, &gamma).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn de_multiplicities_are_inhomogeneous_quadratic() {
        // For fixed i the map gamma -> m(i, gamma) is quadratic: second
        // differences along any lattice direction are constant. Verified by
        // exact interpolation on a 3-point grid per direction.
        let d = datum("D4");
        let mut rng = ChaCha8Rng::seed_from_u64(53);
        for _ in 0..50 {
            let base: Vec<i64> = (0..4).map(|_| rng.gen_range(-3i64..=3)).collect();
            let dir: Vec<i64> = (0..4).map(|_| rng.gen_range(-2i64..=2)).collect();
            for i in 0..=4usize {
                let at = |t: i64| {
                    let g: Vec<i64> = base.iter().zip(&dir).map(|(b, d_)| b + t * d_).collect();
                    m_closed_de(&d, i, &g).unwrap()
                };
                let second = |t: i64| at(t + 2) - 2 * at(t + 1) + at(t);
                assert_eq!(second(0), second(1));
                assert_eq!(second(0), second(2));
            }
        }
    }

    #[test]
    fn canonical_images_dictionary() {
        let d4 = datum("D4");
        let images = canonical_basis_images(&d4, 12).unwrap();
        assert_eq!(images.d_image, ModelVector::DE(HhatVector::d(4)));
        // C-bar_{nu_0} -> -alpha_0^v.
        let (i0, nu0, img0) = &images.entries[0];
        assert_eq!(*i0, 0);
        assert_eq!(*nu0, d4.theta);
        let expect = HhatVector::zero(4).sub(&HhatVector::affine_simple_coroot(&d4));
        assert_eq!(*img0, ModelVector::DE(expect));

        let a2 = datum("A2");
        let images = canonical_basis_images(&a2, 3).unwrap();
        // C-bar_{nu_1} -> -alpha_1^v = eps_2 - eps_1.
        let entry = images.entries.iter().find(|(i, _, _)| *i == 1).unwrap();
        let mut expect = HInftyVector::default();
        expect.add_eps(1, -1);
        expect.add_eps(2, 1);
        assert_eq!(entry.2, ModelVector::A(expect));
    }

    #[test]
    fn type_a_model_is_a_group_action() {
        let d = datum("A2");
        let mut rng = ChaCha8Rng::seed_from_u64(59);
        for _ in 0..120 {
            let mut w1 = AffineWeylElement::identity(&d);
            let mut w2 = AffineWeylElement::identity(&d);
            for _ in 0..rng.gen_range(0..8) {
                let i = rng.gen_range(0..=d.rank);
                w1 = w1.multiply(&AffineWeylElement::simple(&d, i)).unwrap();
            }
            for _ in 0..rng.gen_range(0..8) {
                let i = rng.gen_range(0..=d.rank);
                w2 = w2.multiply(&AffineWeylElement::simple(&d, i)).unwrap();
            }
            let mut x = HInftyVector {
                eps_coeffs: BTreeMap::new(),
                d_coeff: rng.gen_range(-2..=2),
            };
            let mut sum = 0;
            for _ in 0..rng.gen_range(0..5) {
                let idx = rng.gen_range(-6i64..=6);
                let c = rng.gen_range(-3i64..=3);
                x.add_eps(idx, c);
                sum += c;
            }
            x.add_eps(7, -sum); // stay inside h_infty + Z d
            let lhs = act_hinfty(&w1.multiply(&w2).unwrap(), &x).unwrap();
            let rhs = act_hinfty(&w1, &act_hinfty(&w2, &x).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
        // Generator formula: t_{alpha_k^v}(d) = d + eps_k - eps_{k+1-n}.
        let n = 3i64;
        for k in 1..=2i64 {
            let mut eps = vec![0i64; 3];
            eps[(k - 1) as usize] = 1;
            eps[k as usize] = -1;
            let t = AffineWeylElement::translation(&d, d.eps_to_coroot(&eps).unwrap());
            let out = act_hinfty(&t, &HInftyVector::d()).unwrap();
            let mut expected = HInftyVector::d();
            expected.add_eps(k, 1);
            expected.add_eps(k + 1 - n, -1);
            assert_eq!(out, expected, "k = {k}");
        }
    }

    #[test]
    fn oracle_equality_small_sweep() {
        // Module-level smoke test; the acceptance suite runs cap 12 on A2/D4.
        for (label, cap) in [("A2", 6usize), ("A3", 6), ("D4", 6), ("D5", 5), ("E6", 5)] {
            let d = datum(label);
            let report = verify_oracle_equality(&d, cap).unwrap();
            assert!(report.passed(), "{label}: {:?}", report.mismatches);
            assert!(report.pairs_checked > 0);
        }
    }

    #[test]
    fn diagonal_normalization_via_decompose() {
        // decompose_translate(nu_i) has entry 1 at index i.
        for label in ["A2", "D4", "E6"] {
            let d = datum(label);
            let idx: Vec<i64> = if d.label.is_type_a() {
                (-6..=6).collect()
            } else {
                (0..=d.rank as i64).collect()
            };
            for i in idx {
                let nu = subregular_nu(&d, i, 12).unwrap();
                let col = decompose_translate(&d, &nu);
                assert_eq!(col.get(i), 1, "{label}, i = {i}");
                // Also via the subregular element directly: nu_i is the
                // translation part of w_i.
                assert_eq!(subregular_w(&d, i, 12).unwrap().gamma, nu);
            }
        }
    }
}
