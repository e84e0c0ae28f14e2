//! The Hecke algebra of the affine Weyl group over `Z[q^±1]`, its canonical
//! (Kazhdan-Lusztig) basis and inverse KL polynomials, and the
//! anti-spherical module with the parabolic analogues.
//!
//! Conventions: the standard basis `H_w` satisfies `H_w H_v = H_{wv}` when
//! lengths add and `(H_s + 1)(H_s - q) = 0`. The canonical basis element
//! `C_v = sum_{w <= v} P_{w,v}(q) H_w` is the unique bar-invariant element
//! (`bar(C_v) = q^{-l(v)} C_v`) with `P_{v,v} = 1` and
//! `deg P_{w,v} <= (l(v) - l(w) - 1)/2` for `w != v`; in particular
//! `C_s = H_s + H_e`. Inverse KL polynomials are defined by
//! `H_w = sum_v eps(w v^{-1}) m^w_v(q) C_v`.
//!
//! The anti-spherical module `M` is induced from the sign character of the
//! finite Hecke algebra; its standard basis `H'_{w_gamma}` is indexed by the
//! coroot lattice and carries the parabolic canonical basis `C'_{w_nu}` and
//! parabolic inverse KL polynomials, computed here by an independent
//! recursion and cross-checked against the full algebra.
//!
//! Canonical-basis elements are produced by length induction: multiply by
//! `C_s` and strip the degree-violating part of every coefficient, restoring
//! its bar-symmetric completion. Every computed element is certified against
//! the defining triangularity and degree bounds.

use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;
use std::sync::Arc;

use crate::affine_weyl::{is_min_coset_rep, min_coset_rep, AffineWeylElement};
use crate::laurent::LaurentPoly;
use crate::root_data::CartanDatum;
use crate::{Error, Result};

/// Element of the Hecke algebra: a finite `Z[q^±1]`-combination of `H_w`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HeckeElement {
    pub terms: BTreeMap<AffineWeylElement, LaurentPoly>,
}

impl HeckeElement {
    pub fn zero() -> Self {
        HeckeElement::default()
    }

    pub fn basis(w: AffineWeylElement) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(w, LaurentPoly::one());
        HeckeElement { terms }
    }

    pub fn unit(datum: &Arc<CartanDatum>) -> Self {
        HeckeElement::basis(AffineWeylElement::identity(datum))
    }

    pub fn add_term(&mut self, w: AffineWeylElement, p: &LaurentPoly) {
        if p.is_zero() {
            return;
        }
        let entry = self.terms.entry(w).or_default();
        *entry += p;
        if entry.is_zero() {
            let key = self
                .terms
                .iter()
                .find(|(_, v)| v.is_zero())
                .map(|(k, _)| k.clone())
                .unwrap();
            self.terms.remove(&key);
        }
    }

    pub fn coeff(&self, w: &AffineWeylElement) -> LaurentPoly {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn scaled(&self, p: &LaurentPoly) -> Self {
        let mut out = HeckeElement::zero();
        for (w, c) in &self.terms {
            out.add_term(w.clone(), &(c * p));
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, p) in &other.terms {
            out.add_term(w.clone(), p);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, p) in &other.terms {
            out.add_term(w.clone(), &-p);
        }
        out
    }

    /// Right multiplication by `H_{s_i}`.
    pub fn right_mul_simple(&self, i: usize) -> Result<Self> {
        let mut out = HeckeElement::zero();
        for (w, p) in &self.terms {
            let s = AffineWeylElement::simple(&w.datum, i);
            let ws = w.multiply(&s)?;
            if ws.length() > w.length() {
                out.add_term(ws, p);
            } else {
                // H_w H_s = q H_{ws} + (q-1) H_w.
                out.add_term(ws, &p.shifted(1));
                let mut qm1 = LaurentPoly::q();
                qm1.add_term(0, -1);
                out.add_term(w.clone(), &(p * &qm1));
            }
        }
        Ok(out)
    }

    /// Specialization `q = 1`: the group algebra element as a coefficient map.
    pub fn at_q_one(&self) -> BTreeMap<AffineWeylElement, i64> {
        self.terms
            .iter()
            .map(|(w, p)| (w.clone(), p.eval_at_one()))
            .filter(|(_, c)| *c != 0)
            .collect()
    }
}

/// Product in the Hecke algebra, computed by expanding the right factor
/// into reduced words. Exact; intended for moderate supports.
pub fn hecke_mul(a: &HeckeElement, b: &HeckeElement) -> Result<HeckeElement> {
    let mut out = HeckeElement::zero();
    for (v, r) in &b.terms {
        let (_, word) = v.length_and_word();
        let mut cur = a.scaled(r);
        for &i in &word {
            cur = cur.right_mul_simple(i)?;
        }
        out = out.add(&cur);
    }
    Ok(out)
}

/// Element of the anti-spherical module in the standard basis
/// `H'_{w_gamma}`, indexed by coroot-lattice points.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ASElement {
    pub terms: BTreeMap<Vec<i64>, LaurentPoly>,
}

impl ASElement {
    pub fn zero() -> Self {
        ASElement::default()
    }

    pub fn basis(gamma: Vec<i64>) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(gamma, LaurentPoly::one());
        ASElement { terms }
    }

    pub fn add_term(&mut self, gamma: Vec<i64>, p: &LaurentPoly) {
        if p.is_zero() {
            return;
        }
        let entry = self.terms.entry(gamma.clone()).or_default();
        *entry += p;
        if entry.is_zero() {
            self.terms.remove(&gamma);
        }
    }

    pub fn coeff(&self, gamma: &[i64]) -> LaurentPoly {
        self.terms.get(gamma).cloned().unwrap_or_default()
    }

    pub fn scaled(&self, p: &LaurentPoly) -> Self {
        let mut out = ASElement::zero();
        for (g, c) in &self.terms {
            out.add_term(g.clone(), &(c * p));
        }
        out
    }
}

/// Exported parabolic canonical-basis rows: `(nu, [(gamma, polynomial)])`.
pub type CPrimeRows = Vec<(Vec<i64>, Vec<(Vec<i64>, LaurentPoly)>)>;

/// Projection `phi` onto the anti-spherical module:
/// `phi(H_{w_gamma u}) = eps(u) H'_{w_gamma}` for `u` in the finite Weyl
/// group (lengths always add for the minimal representative `w_gamma`).
pub fn antispherical_project(datum: &Arc<CartanDatum>, x: &HeckeElement) -> ASElement {
    let mut out = ASElement::zero();
    for (w, p) in &x.terms {
        let w_gamma = min_coset_rep(datum, &w.gamma);
        let sign = w.sign() * w_gamma.sign();
        out.add_term(w.gamma.clone(), &p.scaled(sign));
    }
    out
}

fn default_cap(rank: usize) -> usize {
    match rank {
        0..=4 => 14,
        5..=6 => 10,
        _ => 8,
    }
}

type Compact = BTreeMap<u32, LaurentPoly>;

/// Memoizing engine for canonical-basis computations in the full Hecke
/// algebra. Single-threaded and deterministic; the cache is insert-only and
/// recomputation always yields identical values.
pub struct HeckeEngine {
    pub datum: Arc<CartanDatum>,
    cap: usize,
    elems: Vec<AffineWeylElement>,
    ids: HashMap<AffineWeylElement, u32>,
    lengths: Vec<u32>,
    signs: Vec<i8>,
    descent_masks: Vec<u32>,
    left_mul: Vec<HashMap<u32, u32>>,
    kl: Vec<Option<Rc<Compact>>>,
    barh: Vec<Option<Rc<Compact>>>,
}

impl HeckeEngine {
    pub fn new(datum: &Arc<CartanDatum>) -> Self {
        let cap = default_cap(datum.rank);
        Self::with_cap(datum, cap)
    }

    pub fn with_cap(datum: &Arc<CartanDatum>, cap: usize) -> Self {
        HeckeEngine {
            datum: datum.clone(),
            cap,
            elems: Vec::new(),
            ids: HashMap::new(),
            lengths: Vec::new(),
            signs: Vec::new(),
            descent_masks: Vec::new(),
            left_mul: vec![HashMap::new(); datum.rank + 1],
            kl: Vec::new(),
            barh: Vec::new(),
        }
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn intern(&mut self, w: &AffineWeylElement) -> u32 {
        if let Some(&id) = self.ids.get(w) {
            return id;
        }
        let (len, _) = w.length_and_word();
        let w_inv = w.inverse();
        let mut mask = 0u32;
        for i in 0..=self.datum.rank {
            let alpha = crate::root_data::AffineRoot::simple(&self.datum, i);
            if !w_inv.act_on_root(&alpha).is_positive() {
                mask |= 1 << i;
            }
        }
        let id = self.elems.len() as u32;
        self.elems.push(w.clone());
        self.ids.insert(w.clone(), id);
        self.lengths.push(len as u32);
        self.signs.push(if len % 2 == 0 { 1 } else { -1 });
        self.descent_masks.push(mask);
        self.kl.push(None);
        self.barh.push(None);
        id
    }

    pub fn element(&self, id: u32) -> &AffineWeylElement {
        &self.elems[id as usize]
    }

    pub fn length_of(&self, id: u32) -> usize {
        self.lengths[id as usize] as usize
    }

    fn smallest_left_descent(&self, id: u32) -> Option<usize> {
        let mask = self.descent_masks[id as usize];
        (0..=self.datum.rank).find(|&i| mask & (1 << i) != 0)
    }

    fn left_mul_simple_id(&mut self, s: usize, id: u32) -> u32 {
        if let Some(&t) = self.left_mul[s].get(&id) {
            return t;
        }
        let sw = AffineWeylElement::simple(&self.datum, s)
            .multiply(&self.elems[id as usize])
            .expect("same datum");
        let t = self.intern(&sw);
        self.left_mul[s].insert(id, t);
        self.left_mul[s].insert(t, id);
        t
    }

    /// Left multiplication `H_s * x` in compact form.
    fn left_mul_hs(&mut self, s: usize, x: &Compact) -> Compact {
        let mut out = Compact::new();
        let entries: Vec<(u32, LaurentPoly)> = x.iter().map(|(&i, p)| (i, p.clone())).collect();
        for (id, p) in entries {
            let t = self.left_mul_simple_id(s, id);
            if self.lengths[t as usize] > self.lengths[id as usize] {
                add_into(&mut out, t, &p);
            } else {
                add_into(&mut out, t, &p.shifted(1));
                let mut qm1p = p.shifted(1);
                qm1p -= &p;
                add_into(&mut out, id, &qm1p);
            }
        }
        out
    }

    /// The canonical basis element `C_v` in compact form.
    fn kl_compact(&mut self, vid: u32) -> Result<Rc<Compact>> {
        if let Some(c) = &self.kl[vid as usize] {
            return Ok(c.clone());
        }
        let len = self.lengths[vid as usize] as usize;
        if len > self.cap {
            return Err(Error::CapExceeded(format!(
                "canonical basis requested at length {len} > cap {} (raise --cap)",
                self.cap
            )));
        }
        let result = if len == 0 {
            let mut c = Compact::new();
            c.insert(vid, LaurentPoly::one());
            c
        } else {
            let s = self
                .smallest_left_descent(vid)
                .expect("nonidentity element");
            let xid = self.left_mul_simple_id(s, vid);
            debug_assert_eq!(self.lengths[xid as usize] as usize, len - 1);
            let cx = self.kl_compact(xid)?;
            // X = C_s C_{v'} = H_s C_{v'} + C_{v'}.
            let mut x = self.left_mul_hs(s, &cx);
            for (id, p) in cx.iter() {
                add_into(&mut x, *id, p);
            }
            self.strip_degree_violations(vid, &mut x)?;
            x
        };
        self.certify_canonical(vid, &result);
        let rc = Rc::new(result);
        self.kl[vid as usize] = Some(rc.clone());
        Ok(rc)
    }

    /// Subtract canonical-basis multiples until every coefficient satisfies
    /// the degree bound `deg <= (l(v) - l(z) - 1)/2`. Corrections are the
    /// bar-symmetric completion of the violating part, processed by
    /// decreasing length; this reproduces the classical mu-coefficient
    /// recursion and stays exact in every case.
    fn strip_degree_violations(&mut self, vid: u32, x: &mut Compact) -> Result<()> {
        let lv = self.lengths[vid as usize] as i32;
        loop {
            let mut worst: Option<(u32, u32)> = None;
            for (&id, p) in x.iter() {
                if id == vid || p.is_zero() {
                    continue;
                }
                let lz = self.lengths[id as usize];
                debug_assert!((lz as i32) < lv);
                let viol = p.degree().is_some_and(|d| 2 * d >= lv - lz as i32);
                if viol {
                    let better = match worst {
                        None => true,
                        Some((_, wl)) => lz > wl,
                    };
                    if better {
                        worst = Some((id, lz));
                    }
                }
            }
            let Some((zid, lz)) = worst else {
                return Ok(());
            };
            let f = x.get(&zid).cloned().unwrap_or_default();
            let gap = lv - lz as i32;
            // Bar-symmetric completion of the high part of f.
            let mut a = LaurentPoly::zero();
            for (e, c) in f.iter() {
                if 2 * e >= gap {
                    a.add_term(e, c);
                    if 2 * e != gap {
                        a.add_term(gap - e, c);
                    }
                }
            }
            let cz = self.kl_compact(zid)?;
            for (id, p) in cz.iter() {
                let mut sub = -(&(p * &a));
                if let Some(existing) = x.get(&id.clone()) {
                    sub += existing;
                }
                if sub.is_zero() {
                    x.remove(id);
                } else {
                    x.insert(*id, sub);
                }
            }
        }
    }

    fn certify_canonical(&self, vid: u32, c: &Compact) {
        let lv = self.lengths[vid as usize] as i32;
        let diag = c.get(&vid).expect("diagonal coefficient present");
        assert!(diag.is_one(), "P_vv != 1");
        for (&id, p) in c.iter() {
            assert!(p.is_polynomial(), "KL coefficient outside Z[q]");
            if id != vid {
                let lz = self.lengths[id as usize] as i32;
                assert!(lz < lv, "triangularity violated");
                let bound = (lv - lz - 1) / 2;
                assert!(
                    p.degree().is_none_or(|d| d <= bound),
                    "degree bound violated: deg {:?} > {bound}",
                    p.degree()
                );
            }
        }
    }

    /// `C_v` as a public Hecke element.
    pub fn kl_basis(&mut self, v: &AffineWeylElement) -> Result<HeckeElement> {
        let vid = self.intern(v);
        let c = self.kl_compact(vid)?;
        Ok(self.to_element(&c))
    }

    /// The KL polynomial `P_{w,v}`.
    pub fn kl_polynomial(
        &mut self,
        w: &AffineWeylElement,
        v: &AffineWeylElement,
    ) -> Result<LaurentPoly> {
        let wid = self.intern(w);
        let vid = self.intern(v);
        let c = self.kl_compact(vid)?;
        Ok(c.get(&wid).cloned().unwrap_or_default())
    }

    /// Expansion `H_w = sum_v eps(w v^{-1}) m^w_v(q) C_v`; returns the map
    /// `v -> m^w_v(q)` over the support.
    pub fn inverse_kl(
        &mut self,
        w: &AffineWeylElement,
    ) -> Result<BTreeMap<AffineWeylElement, LaurentPoly>> {
        let wid = self.intern(w);
        if self.length_of(wid) > self.cap {
            return Err(Error::CapExceeded(format!(
                "inverse KL requested at length {} > cap {}",
                self.length_of(wid),
                self.cap
            )));
        }
        let mut x = Compact::new();
        x.insert(wid, LaurentPoly::one());
        let sign_w = self.signs[wid as usize] as i64;
        let mut out = BTreeMap::new();
        while let Some((&zid, _)) = x
            .iter()
            .max_by_key(|(&id, _)| (self.lengths[id as usize], std::cmp::Reverse(id)))
        {
            let c = x.get(&zid).cloned().unwrap();
            if c.is_zero() {
                x.remove(&zid);
                continue;
            }
            let m = c.scaled(sign_w * self.signs[zid as usize] as i64);
            out.insert(self.elems[zid as usize].clone(), m);
            let cz = self.kl_compact(zid)?;
            for (id, p) in cz.iter() {
                let mut upd = x.get(id).cloned().unwrap_or_default();
                upd -= &(p * &c);
                if upd.is_zero() {
                    x.remove(id);
                } else {
                    x.insert(*id, upd);
                }
            }
            debug_assert!(!x.contains_key(&zid));
        }
        Ok(out)
    }

    /// `bar(H_w)`, cached by length induction:
    /// `bar(H_s) = q^{-1} H_s + (q^{-1} - 1) H_e`.
    fn barh_compact(&mut self, wid: u32) -> Rc<Compact> {
        if let Some(b) = &self.barh[wid as usize] {
            return b.clone();
        }
        let result = if self.lengths[wid as usize] == 0 {
            let mut c = Compact::new();
            c.insert(wid, LaurentPoly::one());
            c
        } else {
            let s = self.smallest_left_descent(wid).unwrap();
            let xid = self.left_mul_simple_id(s, wid);
            let bx = self.barh_compact(xid);
            // bar(H_s) * bx = q^{-1} (H_s * bx) + (q^{-1} - 1) bx.
            let hsbx = self.left_mul_hs(s, &bx);
            let mut out = Compact::new();
            for (&id, p) in hsbx.iter() {
                add_into(&mut out, id, &p.shifted(-1));
            }
            for (&id, p) in bx.iter() {
                let mut corr = p.shifted(-1);
                corr -= p;
                add_into(&mut out, id, &corr);
            }
            out
        };
        let rc = Rc::new(result);
        self.barh[wid as usize] = Some(rc.clone());
        rc
    }

    /// Bar involution of an arbitrary element.
    pub fn bar(&mut self, x: &HeckeElement) -> Result<HeckeElement> {
        let mut out = Compact::new();
        for (w, p) in &x.terms {
            let wid = self.intern(w);
            let bw = self.barh_compact(wid);
            let pbar = p.bar();
            for (&id, c) in bw.iter() {
                add_into(&mut out, id, &(c * &pbar));
            }
        }
        Ok(self.to_element(&out))
    }

    /// Exact check `bar(C_v) = q^{-l(v)} C_v`.
    pub fn verify_bar_invariance(&mut self, v: &AffineWeylElement) -> Result<bool> {
        let vid = self.intern(v);
        let c = self.kl_compact(vid)?;
        let celt = self.to_element(&c);
        let barred = self.bar(&celt)?;
        let shift = -(self.lengths[vid as usize] as i32);
        let expected: BTreeMap<_, _> = celt
            .terms
            .iter()
            .map(|(w, p)| (w.clone(), p.shifted(shift)))
            .collect();
        Ok(barred.terms == expected)
    }

    fn to_element(&self, c: &Compact) -> HeckeElement {
        let mut out = HeckeElement::zero();
        for (&id, p) in c.iter() {
            out.add_term(self.elems[id as usize].clone(), p);
        }
        out
    }

    /// Ids of all interned elements (diagnostics and sweeps).
    pub fn interned_count(&self) -> usize {
        self.elems.len()
    }
}

fn add_into(map: &mut Compact, id: u32, p: &LaurentPoly) {
    if p.is_zero() {
        return;
    }
    let entry = map.entry(id).or_default();
    *entry += p;
    if entry.is_zero() {
        map.remove(&id);
    }
}

/// How `H_s` moves a minimal coset representative.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum SAction {
    /// `s w_gamma` is longer and minimal: new coset.
    Up(u32),
    /// `s w_gamma` is longer but equals `w_gamma t`: same coset, sign `-1`.
    Wall,
    /// `s w_gamma` is shorter (and automatically minimal).
    Down(u32),
}

/// Memoizing engine for the anti-spherical module `M`; indexes the standard
/// basis by coroot-lattice points and runs the parabolic KL recursion
/// directly in `M`.
pub struct AntisphericalEngine {
    pub datum: Arc<CartanDatum>,
    cap: usize,
    gammas: Vec<Vec<i64>>,
    gids: HashMap<Vec<i64>, u32>,
    lengths: Vec<u32>,
    signs: Vec<i8>,
    actions: Vec<HashMap<u32, SAction>>,
    cprime: Vec<Option<Rc<Compact>>>,
}

impl AntisphericalEngine {
    pub fn new(datum: &Arc<CartanDatum>) -> Self {
        let cap = default_cap(datum.rank);
        Self::with_cap(datum, cap)
    }

    pub fn with_cap(datum: &Arc<CartanDatum>, cap: usize) -> Self {
        AntisphericalEngine {
            datum: datum.clone(),
            cap,
            gammas: Vec::new(),
            gids: HashMap::new(),
            lengths: Vec::new(),
            signs: Vec::new(),
            actions: vec![HashMap::new(); datum.rank + 1],
            cprime: Vec::new(),
        }
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn intern(&mut self, gamma: &[i64]) -> u32 {
        if let Some(&id) = self.gids.get(gamma) {
            return id;
        }
        let w = min_coset_rep(&self.datum, gamma);
        let len = w.length();
        let id = self.gammas.len() as u32;
        self.gammas.push(gamma.to_vec());
        self.gids.insert(gamma.to_vec(), id);
        self.lengths.push(len as u32);
        self.signs.push(if len.is_multiple_of(2) { 1 } else { -1 });
        self.cprime.push(None);
        id
    }

    pub fn gamma(&self, id: u32) -> &[i64] {
        &self.gammas[id as usize]
    }

    /// `l(w_gamma)`.
    pub fn coset_length(&mut self, gamma: &[i64]) -> usize {
        let id = self.intern(gamma);
        self.lengths[id as usize] as usize
    }

    pub fn coset_sign(&mut self, gamma: &[i64]) -> i64 {
        let id = self.intern(gamma);
        self.signs[id as usize] as i64
    }

    fn action(&mut self, s: usize, id: u32) -> SAction {
        if let Some(&a) = self.actions[s].get(&id) {
            return a;
        }
        let w = min_coset_rep(&self.datum, &self.gammas[id as usize].clone());
        let sw = AffineWeylElement::simple(&self.datum, s)
            .multiply(&w)
            .unwrap();
        let a = if sw.length() > w.length() {
            if is_min_coset_rep(&sw) {
                SAction::Up(self.intern(&sw.gamma.clone()))
            } else {
                SAction::Wall
            }
        } else {
            SAction::Down(self.intern(&sw.gamma.clone()))
        };
        self.actions[s].insert(id, a);
        a
    }

    /// `H_s` acting on a compact element of `M`.
    fn act_hs(&mut self, s: usize, x: &Compact) -> Compact {
        let mut out = Compact::new();
        let entries: Vec<(u32, LaurentPoly)> = x.iter().map(|(&i, p)| (i, p.clone())).collect();
        for (id, p) in entries {
            match self.action(s, id) {
                SAction::Up(t) => add_into(&mut out, t, &p),
                SAction::Wall => add_into(&mut out, id, &-(&p)),
                SAction::Down(t) => {
                    add_into(&mut out, t, &p.shifted(1));
                    let mut qm1p = p.shifted(1);
                    qm1p -= &p;
                    add_into(&mut out, id, &qm1p);
                }
            }
        }
        out
    }

    /// Smallest affine `s` with `s w_gamma < w_gamma`.
    fn smallest_down(&mut self, id: u32) -> Option<usize> {
        (0..=self.datum.rank).find(|&s| matches!(self.action(s, id), SAction::Down(_)))
    }

    fn cprime_compact(&mut self, nid: u32) -> Result<Rc<Compact>> {
        if let Some(c) = &self.cprime[nid as usize] {
            return Ok(c.clone());
        }
        let len = self.lengths[nid as usize] as usize;
        if len > self.cap {
            return Err(Error::CapExceeded(format!(
                "parabolic canonical basis requested at length {len} > cap {}",
                self.cap
            )));
        }
        let result = if len == 0 {
            let mut c = Compact::new();
            c.insert(nid, LaurentPoly::one());
            c
        } else {
            let s = self
                .smallest_down(nid)
                .expect("noninitial coset has a descent");
            let SAction::Down(xid) = self.action(s, nid) else {
                unreachable!()
            };
            let cx = self.cprime_compact(xid)?;
            let mut x = self.act_hs(s, &cx);
            for (id, p) in cx.iter() {
                add_into(&mut x, *id, p);
            }
            // Strip degree violations by decreasing length, exactly as in
            // the full algebra but with parabolic canonical elements.
            loop {
                let lv = self.lengths[nid as usize] as i32;
                let mut worst: Option<(u32, u32)> = None;
                for (&id, p) in x.iter() {
                    if id == nid || p.is_zero() {
                        continue;
                    }
                    let lz = self.lengths[id as usize];
                    if p.degree().is_some_and(|d| 2 * d >= lv - lz as i32) {
                        let better = match worst {
                            None => true,
                            Some((_, wl)) => lz > wl,
                        };
                        if better {
                            worst = Some((id, lz));
                        }
                    }
                }
                let Some((zid, lz)) = worst else { break };
                let f = x.get(&zid).cloned().unwrap_or_default();
                let gap = lv - lz as i32;
                let mut a = LaurentPoly::zero();
                for (e, c) in f.iter() {
                    if 2 * e >= gap {
                        a.add_term(e, c);
                        if 2 * e != gap {
                            a.add_term(gap - e, c);
                        }
                    }
                }
                let cz = self.cprime_compact(zid)?;
                for (id, p) in cz.iter() {
                    let mut upd = x.get(id).cloned().unwrap_or_default();
                    upd -= &(p * &a);
                    if upd.is_zero() {
                        x.remove(id);
                    } else {
                        x.insert(*id, upd);
                    }
                }
            }
            x
        };
        // Certification: triangular, P~ in Z[q], unit diagonal, degree bounds.
        let lv = self.lengths[nid as usize] as i32;
        assert!(
            result.get(&nid).is_some_and(|p| p.is_one()),
            "P~ diagonal != 1"
        );
        for (&id, p) in result.iter() {
            assert!(p.is_polynomial(), "parabolic KL coefficient outside Z[q]");
            if id != nid {
                let lz = self.lengths[id as usize] as i32;
                assert!(lz < lv);
                assert!(
                    p.degree().is_none_or(|d| 2 * d < lv - lz),
                    "parabolic degree bound"
                );
            }
        }
        let rc = Rc::new(result);
        self.cprime[nid as usize] = Some(rc.clone());
        Ok(rc)
    }

    /// Parabolic canonical basis element `C'_{w_nu}` in the standard basis.
    pub fn parabolic_kl(&mut self, nu: &[i64]) -> Result<ASElement> {
        let nid = self.intern(nu);
        let c = self.cprime_compact(nid)?;
        Ok(self.to_element(&c))
    }

    /// The parabolic KL polynomial `P~_{w_gamma, w_nu}`.
    pub fn parabolic_kl_polynomial(&mut self, gamma: &[i64], nu: &[i64]) -> Result<LaurentPoly> {
        let gid = self.intern(gamma);
        let nid = self.intern(nu);
        let c = self.cprime_compact(nid)?;
        Ok(c.get(&gid).cloned().unwrap_or_default())
    }

    /// Expansion `H'_{w_gamma} = sum_nu eps(w_gamma w_nu^{-1}) m~(q) C'_{w_nu}`;
    /// returns `nu -> m~^{w_gamma}_{w_nu}(q)`.
    pub fn parabolic_inverse(&mut self, gamma: &[i64]) -> Result<BTreeMap<Vec<i64>, LaurentPoly>> {
        let gid = self.intern(gamma);
        if self.lengths[gid as usize] as usize > self.cap {
            return Err(Error::CapExceeded(format!(
                "parabolic inverse KL requested at length {} > cap {}",
                self.lengths[gid as usize], self.cap
            )));
        }
        let mut x = Compact::new();
        x.insert(gid, LaurentPoly::one());
        let sign_g = self.signs[gid as usize] as i64;
        let mut out = BTreeMap::new();
        while let Some((&zid, _)) = x
            .iter()
            .max_by_key(|(&id, _)| (self.lengths[id as usize], std::cmp::Reverse(id)))
        {
            let c = x.get(&zid).cloned().unwrap();
            if c.is_zero() {
                x.remove(&zid);
                continue;
            }
            let m = c.scaled(sign_g * self.signs[zid as usize] as i64);
            out.insert(self.gammas[zid as usize].clone(), m);
            let cz = self.cprime_compact(zid)?;
            for (id, p) in cz.iter() {
                let mut upd = x.get(id).cloned().unwrap_or_default();
                upd -= &(p * &c);
                if upd.is_zero() {
                    x.remove(id);
                } else {
                    x.insert(*id, upd);
                }
            }
        }
        Ok(out)
    }

    /// Sign-normalized standard basis `T_gamma = eps(w_gamma) H'_{w_gamma}`.
    pub fn t_basis(&mut self, gamma: &[i64]) -> ASElement {
        let sign = self.coset_sign(gamma);
        ASElement::basis(gamma.to_vec()).scaled(&LaurentPoly::constant(sign))
    }

    /// Sign-normalized canonical basis `C_nu = eps(w_nu) C'_{w_nu}`.
    pub fn c_basis(&mut self, nu: &[i64]) -> Result<ASElement> {
        let sign = self.coset_sign(nu);
        Ok(self.parabolic_kl(nu)?.scaled(&LaurentPoly::constant(sign)))
    }

    /// Expansion `T_gamma = sum_nu m^{w_gamma}_{w_nu}(q) C_nu`; the
    /// coefficients here carry no sign twist.
    pub fn t_in_c_basis(&mut self, gamma: &[i64]) -> Result<BTreeMap<Vec<i64>, LaurentPoly>> {
        self.parabolic_inverse(gamma)
    }

    fn to_element(&self, c: &Compact) -> ASElement {
        let mut out = ASElement::zero();
        for (&id, p) in c.iter() {
            out.add_term(self.gammas[id as usize].clone(), p);
        }
        out
    }

    /// Export all cached parabolic canonical-basis elements keyed by lattice
    /// points, for persistence between runs.
    pub fn export_cprime(&self) -> CPrimeRows {
        let mut out = Vec::new();
        for (id, slot) in self.cprime.iter().enumerate() {
            if let Some(c) = slot {
                let nu = self.gammas[id].clone();
                let rows = c
                    .iter()
                    .map(|(&gid, p)| (self.gammas[gid as usize].clone(), p.clone()))
                    .collect();
                out.push((nu, rows));
            }
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }

    /// Import previously exported elements. Every entry is re-certified
    /// (unit diagonal, `Z[q]` coefficients, triangularity and degree
    /// bounds); entries failing certification are rejected and the count of
    /// accepted entries is returned.
    pub fn import_cprime(&mut self, entries: CPrimeRows) -> usize {
        let mut accepted = 0;
        'entry: for (nu, rows) in entries {
            if nu.len() != self.datum.rank {
                continue;
            }
            let nid = self.intern(&nu);
            if self.cprime[nid as usize].is_some() {
                continue;
            }
            let lv = self.lengths[nid as usize] as i32;
            let mut compact = Compact::new();
            for (g, p) in rows {
                if g.len() != self.datum.rank || p.is_zero() || !p.is_polynomial() {
                    continue 'entry;
                }
                let gid = self.intern(&g);
                if gid == nid {
                    if !p.is_one() {
                        continue 'entry;
                    }
                } else {
                    let lz = self.lengths[gid as usize] as i32;
                    let bound_ok = lz < lv && p.degree().is_none_or(|d| 2 * d < lv - lz);
                    if !bound_ok {
                        continue 'entry;
                    }
                }
                compact.insert(gid, p);
            }
            if !compact.get(&nid).is_some_and(|p| p.is_one()) {
                continue;
            }
            self.cprime[nid as usize] = Some(Rc::new(compact));
            accepted += 1;
        }
        accepted
    }

    /// Lattice points `gamma` with `l(w_gamma) <= max_len`, BFS-certified,
    /// sorted by (length, gamma).
    pub fn cosets_up_to_length(&mut self, max_len: usize) -> Vec<(Vec<i64>, usize)> {
        let zero = vec![0i64; self.datum.rank];
        let zid = self.intern(&zero);
        let mut known: BTreeMap<Vec<i64>, usize> = BTreeMap::new();
        known.insert(zero, 0);
        let mut frontier = vec![zid];
        for len in 1..=max_len {
            let mut next = Vec::new();
            for &id in &frontier.clone() {
                for s in 0..=self.datum.rank {
                    if let SAction::Up(t) = self.action(s, id) {
                        let g = self.gammas[t as usize].clone();
                        if let std::collections::btree_map::Entry::Vacant(e) = known.entry(g) {
                            e.insert(len);
                            next.push(t);
                        }
                    }
                }
            }
            frontier = next;
        }
        let mut out: Vec<(Vec<i64>, usize)> = known.into_iter().collect();
        out.sort_by(|a, b| (a.1, &a.0).cmp(&(b.1, &b.0)));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affine_weyl::subregular_nu;
    use crate::root_data::{build_cartan, TypeLabel};
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
    fn quadratic_relation() {
        let d = datum("A2");
        let s = AffineWeylElement::simple(&d, 1);
        let hs = HeckeElement::basis(s.clone());
        let prod = hecke_mul(&hs, &hs).unwrap();
        // H_s H_s = q H_e + (q - 1) H_s.
        let mut expected = HeckeElement::zero();
        expected.add_term(
            AffineWeylElement::identity(&d),
            &LaurentPoly::monomial(1, 1),
        );
        let mut qm1 = LaurentPoly::monomial(1, 1);
        qm1.add_term(0, -1);
        expected.add_term(s, &qm1);
        assert_eq!(prod, expected);
        // Specialization q = 1 recovers the group algebra: H_s^2 = H_e.
        let at1 = prod.at_q_one();
        assert_eq!(at1.len(), 1);
        assert_eq!(at1[&AffineWeylElement::identity(&d)], 1);
    }

    #[test]
    fn lengths_add_multiplicatively() {
        let d = datum("A2");
        let s0 = HeckeElement::basis(AffineWeylElement::simple(&d, 0));
        let s1 = HeckeElement::basis(AffineWeylElement::simple(&d, 1));
        let prod = hecke_mul(&s0, &s1).unwrap();
        let expected = HeckeElement::basis(AffineWeylElement::from_word(&d, &[0, 1]));
        assert_eq!(prod, expected);
    }

    #[test]
    fn hecke_mul_is_associative_on_random_elements() {
        let d = datum("A2");
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..12 {
            let mk = |rng: &mut ChaCha8Rng| {
                let mut x = HeckeElement::zero();
                for _ in 0..rng.gen_range(1..3) {
                    let steps = rng.gen_range(0..5);
                    let w = random_element(&d, rng, steps);
                    let p = LaurentPoly::monomial(rng.gen_range(-2..3), rng.gen_range(-3..4));
                    x.add_term(w, &p);
                }
                x
            };
            let (a, b, c) = (mk(&mut rng), mk(&mut rng), mk(&mut rng));
            let ab_c = hecke_mul(&hecke_mul(&a, &b).unwrap(), &c).unwrap();
            let a_bc = hecke_mul(&a, &hecke_mul(&b, &c).unwrap()).unwrap();
            assert_eq!(ab_c, a_bc);
        }
    }

    #[test]
    fn bar_involution_basics() {
        let d = datum("A2");
        let mut eng = HeckeEngine::new(&d);
        let he = HeckeElement::unit(&d);
        assert_eq!(eng.bar(&he).unwrap(), he);
        // bar(H_s) = q^{-1} H_s + (q^{-1} - 1) H_e.
        let s = AffineWeylElement::simple(&d, 0);
        let bs = eng.bar(&HeckeElement::basis(s.clone())).unwrap();
        let mut expected = HeckeElement::zero();
        expected.add_term(s.clone(), &LaurentPoly::monomial(-1, 1));
        let mut qinv_m1 = LaurentPoly::monomial(-1, 1);
        qinv_m1.add_term(0, -1);
        expected.add_term(AffineWeylElement::identity(&d), &qinv_m1);
        assert_eq!(bs, expected);
        // bar(q H_s) = q^{-1} (q^{-1} H_s + (q^{-1} - 1) H_e).
        let qbs = eng
            .bar(&HeckeElement::basis(s).scaled(&LaurentPoly::q()))
            .unwrap();
        assert_eq!(qbs, expected.scaled(&LaurentPoly::monomial(-1, 1)));
    }

    #[test]
    fn bar_is_involutive_and_multiplicative_on_random_elements() {
        let d = datum("A2");
        let mut eng = HeckeEngine::new(&d);
        let mut rng = ChaCha8Rng::seed_from_u64(37);
        for _ in 0..100 {
            let mut x = HeckeElement::zero();
            for _ in 0..rng.gen_range(1..4) {
                let steps = rng.gen_range(0..6);
                let w = random_element(&d, &mut rng, steps);
                let mut p = LaurentPoly::zero();
                for _ in 0..rng.gen_range(1..3) {
                    p.add_term(rng.gen_range(-3..4), rng.gen_range(-5..6));
                }
                x.add_term(w, &p);
            }
            let b1 = eng.bar(&x).unwrap();
            let bb = eng.bar(&b1).unwrap();
            assert_eq!(bb, x);
        }
        // Ring map on a product of basis elements.
        let a = HeckeElement::basis(AffineWeylElement::from_word(&d, &[0, 1]));
        let b = HeckeElement::basis(AffineWeylElement::from_word(&d, &[2, 0]));
        let lhs = eng.bar(&hecke_mul(&a, &b).unwrap()).unwrap();
        let rhs = hecke_mul(&eng.bar(&a).unwrap(), &eng.bar(&b).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn canonical_basis_small_cases() {
        let d = datum("A2");
        let mut eng = HeckeEngine::new(&d);
        // C_e = H_e.
        let ce = eng.kl_basis(&AffineWeylElement::identity(&d)).unwrap();
        assert_eq!(ce, HeckeElement::unit(&d));
        // C_s = H_s + H_e: the unique bar-invariant triangular element.
        for i in 0..=2 {
            let s = AffineWeylElement::simple(&d, i);
            let cs = eng.kl_basis(&s).unwrap();
            let mut expected = HeckeElement::basis(s);
            expected.add_term(AffineWeylElement::identity(&d), &LaurentPoly::one());
            assert_eq!(cs, expected);
        }
    }

    #[test]
    fn kl_polynomials_are_one_for_small_length_gaps() {
        let d = datum("A2");
        let mut eng = HeckeEngine::new(&d);
        let ball = crate::affine_weyl::enumerate_up_to_length(&d, 5, 100_000).unwrap();
        for (v, lv) in &ball {
            let c = eng.kl_basis(v).unwrap();
            for (w, p) in &c.terms {
                let lw = w.length();
                if lv - lw <= 2 {
                    assert!(p.is_one(), "P_{{w,v}} = 1 expected for gap <= 2");
                }
            }
        }
    }

    #[test]
    fn bar_invariance_of_canonical_basis() {
        for label in ["A2", "D4"] {
            let d = datum(label);
            let mut eng = HeckeEngine::new(&d);
            for (v, _) in crate::affine_weyl::enumerate_up_to_length(&d, 4, 100_000).unwrap() {
                assert!(
                    eng.verify_bar_invariance(&v).unwrap(),
                    "{label}: {:?}",
                    v.to_json()
                );
            }
        }
    }

    #[test]
    fn inverse_kl_small_cases() {
        let d = datum("A2");
        let mut eng = HeckeEngine::new(&d);
        let e = AffineWeylElement::identity(&d);
        let inv = eng.inverse_kl(&e).unwrap();
        assert_eq!(inv.len(), 1);
        assert!(inv[&e].is_one());
        // H_s = C_s - C_e: m^s_s = 1, m^s_e = 1 (sign eps(s) = -1 absorbed).
        let s = AffineWeylElement::simple(&d, 1);
        let inv = eng.inverse_kl(&s).unwrap();
        assert_eq!(inv.len(), 2);
        assert!(inv[&s].is_one());
        assert!(inv[&e].is_one());
    }

    #[test]
    fn inverse_kl_round_trip() {
        // Expanding sum eps m C_v reproduces H_w exactly.
        let d = datum("A2");
        let mut eng = HeckeEngine::with_cap(&d, 8);
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..10 {
            let steps = rng.gen_range(0..7);
            let w = random_element(&d, &mut rng, steps);
            let col = eng.inverse_kl(&w).unwrap();
            let mut acc = HeckeElement::zero();
            for (v, m) in &col {
                let sign = w.sign() * v.sign();
                let cv = eng.kl_basis(v).unwrap();
                acc = acc.add(&cv.scaled(&m.scaled(sign)));
            }
            assert_eq!(acc, HeckeElement::basis(w));
        }
    }

    #[test]
    fn inverse_kl_symmetry_under_inversion() {
        // m^w_v = m^{w^{-1}}_{v^{-1}} on a full small ball.
        let d = datum("A2");
        let mut eng = HeckeEngine::with_cap(&d, 6);
        for (w, _) in crate::affine_weyl::enumerate_up_to_length(&d, 4, 100_000).unwrap() {
            let col = eng.inverse_kl(&w).unwrap();
            let col_inv = eng.inverse_kl(&w.inverse()).unwrap();
            for (v, m) in &col {
                let m2 = col_inv.get(&v.inverse()).cloned().unwrap_or_default();
                assert_eq!(
                    *m,
                    m2,
                    "symmetry fails at w={:?} v={:?}",
                    w.to_json(),
                    v.to_json()
                );
            }
        }
    }

    #[test]
    fn projection_examples() {
        let d = datum("D4");
        // phi(H_{s_1}) = -H'_e for a finite simple reflection.
        let s1 = AffineWeylElement::simple(&d, 1);
        let p = antispherical_project(&d, &HeckeElement::basis(s1.clone()));
        let mut expected = ASElement::zero();
        expected.add_term(vec![0; 4], &LaurentPoly::constant(-1));
        assert_eq!(p, expected);
        // phi(H_{s_0}) = H'_{w_theta}: s_0 is already minimal.
        let s0 = AffineWeylElement::simple(&d, 0);
        let p = antispherical_project(&d, &HeckeElement::basis(s0));
        assert_eq!(p, ASElement::basis(d.theta.clone()));
        // phi(C_{s_1}) = phi(H_{s_1} + H_e) = -H'_e + H'_e = 0.
        let mut eng = HeckeEngine::new(&d);
        let c = eng.kl_basis(&s1).unwrap();
        assert_eq!(antispherical_project(&d, &c), ASElement::zero());
    }

    #[test]
    fn phi_of_canonical_equals_parabolic_canonical() {
        // C'_{w_nu} = phi(C_{w_nu}) for all nu with l(w_nu) <= 8 in A2
        // (and a shorter D4 sweep); phi(C_w) = 0 for non-minimal w.
        for (label, cap) in [("A2", 8usize), ("D4", 5)] {
            let d = datum(label);
            let mut eng = HeckeEngine::with_cap(&d, cap + 1);
            let mut aseng = AntisphericalEngine::with_cap(&d, cap + 1);
            for (w, _) in crate::affine_weyl::enumerate_up_to_length(&d, cap, 10_000_000).unwrap() {
                let c = eng.kl_basis(&w).unwrap();
                let projected = antispherical_project(&d, &c);
                if is_min_coset_rep(&w) {
                    let cprime = aseng.parabolic_kl(&w.gamma).unwrap();
                    assert_eq!(projected, cprime, "{label} nu={:?}", w.gamma);
                } else {
                    assert_eq!(projected, ASElement::zero(), "{label} w={:?}", w.to_json());
                }
            }
        }
    }

    #[test]
    fn phi_is_a_module_map() {
        // phi(H_s x) = H_s . phi(x) where the right side is evaluated via the
        // engine's three-case action, for random x.
        let d = datum("A2");
        let mut aseng = AntisphericalEngine::new(&d);
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        for _ in 0..60 {
            let mut x = HeckeElement::zero();
            for _ in 0..rng.gen_range(1..4) {
                let steps = rng.gen_range(0..6);
                let w = random_element(&d, &mut rng, steps);
                x.add_term(
                    w,
                    &LaurentPoly::monomial(rng.gen_range(-2..3), rng.gen_range(-3..4)),
                );
            }
            for s in 0..=d.rank {
                let hs = HeckeElement::basis(AffineWeylElement::simple(&d, s));
                let lhs = antispherical_project(&d, &hecke_mul(&hs, &x).unwrap());
                let px = antispherical_project(&d, &x);
                let mut compact = Compact::new();
                for (g, p) in &px.terms {
                    let id = aseng.intern(g);
                    add_into(&mut compact, id, p);
                }
                let moved = aseng.act_hs(s, &compact);
                let rhs = aseng.to_element(&moved);
                assert_eq!(lhs, rhs, "s = {s}");
            }
        }
    }

    #[test]
    fn parabolic_basics() {
        let d = datum("A2");
        let mut eng = AntisphericalEngine::new(&d);
        // nu = 0: C'_e = H'_e.
        let c0 = eng.parabolic_kl(&[0, 0]).unwrap();
        assert_eq!(c0, ASElement::basis(vec![0, 0]));
        // T_0 = C_0 = H'_e.
        assert_eq!(eng.t_basis(&[0, 0]), ASElement::basis(vec![0, 0]));
        assert_eq!(eng.c_basis(&[0, 0]).unwrap(), ASElement::basis(vec![0, 0]));
    }

    #[test]
    fn t_theta_has_unit_diagonal_coefficient() {
        // T_theta = C_{nu_0} + lower: m^{w_theta}_{w_0} = 1 since w_theta = s_0 = w_0.
        let d = datum("D4");
        let mut eng = AntisphericalEngine::new(&d);
        let theta = d.theta.clone();
        let col = eng.t_in_c_basis(&theta).unwrap();
        assert!(col[&theta].is_one());
        // Cross-check with the closed form <Lambda_0, -theta + K> = 1 at i = 0.
        let diag_at_one = col[&theta].eval_at_one();
        assert_eq!(diag_at_one, 1);
    }

    #[test]
    fn parabolic_inverse_matches_full_inverse() {
        // m~^{w_gamma}_{w_nu}(q) = m^{w_gamma}_{w_nu}(q): the module-level
        // acceptance criterion at a small cap.
        let d = datum("A2");
        let mut full = HeckeEngine::with_cap(&d, 7);
        let mut parab = AntisphericalEngine::with_cap(&d, 7);
        let cosets = parab.cosets_up_to_length(6);
        for (gamma, _) in &cosets {
            let w_gamma = min_coset_rep(&d, gamma);
            let full_col = full.inverse_kl(&w_gamma).unwrap();
            let parab_col = parab.parabolic_inverse(gamma).unwrap();
            for (nu, m_tilde) in &parab_col {
                let w_nu = min_coset_rep(&d, nu);
                let m_full = full_col.get(&w_nu).cloned().unwrap_or_default();
                assert_eq!(*m_tilde, m_full, "gamma={gamma:?} nu={nu:?}");
            }
            // Every minimal-rep entry of the full column appears in the
            // parabolic column.
            for (v, m) in &full_col {
                if is_min_coset_rep(v) && !m.is_zero() {
                    assert!(parab_col.contains_key(&v.gamma), "missing nu={:?}", v.gamma);
                }
            }
        }
    }

    #[test]
    fn diagonal_normalization_of_parabolic_inverse() {
        let d = datum("A2");
        let mut eng = AntisphericalEngine::new(&d);
        for i in -5i64..=5 {
            let nu = subregular_nu(&d, i, 12).unwrap();
            let col = eng.parabolic_inverse(&nu).unwrap();
            assert!(col[&nu].is_one(), "m^{{w_nu}}_{{w_nu}} = 1 at i = {i}");
        }
    }

    #[test]
    fn caps_are_enforced() {
        let d = datum("A2");
        let mut eng = HeckeEngine::with_cap(&d, 3);
        let long = AffineWeylElement::from_word(&d, &[0, 1, 2, 0, 1]);
        assert_eq!(long.length(), 5);
        assert!(matches!(eng.kl_basis(&long), Err(Error::CapExceeded(_))));
        assert!(matches!(eng.inverse_kl(&long), Err(Error::CapExceeded(_))));
        let mut aseng = AntisphericalEngine::with_cap(&d, 2);
        let nu = subregular_nu(&d, 4, 12).unwrap();
        assert!(matches!(
            aseng.parabolic_inverse(&nu),
            Err(Error::CapExceeded(_))
        ));
    }

    #[test]
    fn coset_enumeration_counts() {
        // Minimal-representative counts by length in affine A2: the series
        // 1/((1-t)(1-t^2)) gives 1, 1, 2, 2, 3, 3, ...
        let d = datum("A2");
        let mut eng = AntisphericalEngine::new(&d);
        let cosets = eng.cosets_up_to_length(7);
        let mut by_len = vec![0usize; 8];
        for (_, l) in &cosets {
            by_len[*l] += 1;
        }
        assert_eq!(by_len, vec![1, 1, 2, 2, 3, 3, 4, 4]);
    }
}
