//! Kottwitz class, Newton point, straightness, reduction to minimal length
//! under twisted conjugation, Newton fibers and standard triples.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use num_rational::Rational64;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::root_datum::RootDatum;
use crate::setting::Setting;
use crate::weyl::{ExtAffElt, ShortLexKey};

/// ν_w together with its dominant representative and the power n with
/// (wθ)ⁿ = t^{nν}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewtonPoint {
    pub nu: Vec<Rational64>,
    pub nu_bar: Vec<Rational64>,
    pub witness_power: usize,
}

/// π(w) = (κ(w), ν̄_w).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NewtonPair {
    pub kappa: Vec<i64>,
    pub nu_bar: Vec<Rational64>,
}

/// What a single move conjugates by.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Conjugator {
    /// w ↦ sᵢ·w·θ(sᵢ).
    Simple(usize),
    /// w ↦ x·w·θ(x)⁻¹ for a length-zero or bounded-length x.
    Element(ExtAffElt),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionStep {
    pub conjugator: Conjugator,
    pub from: ExtAffElt,
    pub to: ExtAffElt,
    pub length_change: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionResult {
    pub minimal_element: ExtAffElt,
    pub path: Vec<ReductionStep>,
    pub class_label: ExtAffElt,
}

/// Order in which candidate descents are tried.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PivotOrder {
    /// Smallest generator index first, then ShortLex-least closure member.
    #[default]
    Default,
    /// Largest index first, then ShortLex-greatest member.
    Reversed,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberClass {
    pub label: ExtAffElt,
    pub minimal_elements: Vec<ExtAffElt>,
    pub straight: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberReport {
    pub nu: NewtonPair,
    pub classes: Vec<FiberClass>,
    pub n_nu: usize,
}

impl FiberReport {
    pub fn minimal_elements(&self) -> Vec<ExtAffElt> {
        self.classes.iter().flat_map(|c| c.minimal_elements.iter().cloned()).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StandardTriple {
    pub x: ExtAffElt,
    pub k: Vec<usize>,
    pub u: ExtAffElt,
}

impl StandardTriple {
    pub fn product(&self) -> ExtAffElt {
        self.u.mul(&self.x)
    }
}

/// One ≈-closure at fixed length with a BFS spanning tree.
pub(crate) struct Closure {
    pub members: Vec<ExtAffElt>,
    parent: Vec<Option<(usize, Conjugator)>>,
}

impl Closure {
    /// Steps leading from the closure's start to member `idx`.
    fn path_to(&self, idx: usize) -> Vec<ReductionStep> {
        let mut steps = Vec::new();
        let mut cur = idx;
        while let Some((p, c)) = &self.parent[cur] {
            steps.push(ReductionStep {
                conjugator: c.clone(),
                from: self.members[*p].clone(),
                to: self.members[cur].clone(),
                length_change: 0,
            });
            cur = *p;
        }
        steps.reverse();
        steps
    }
}

impl RootDatum {
    /// Whether W_K is finite. Only the full set of affine generators of an
    /// irreducible datum fails.
    pub fn is_finite_type(&self, k: &[usize]) -> bool {
        let mut s: Vec<usize> = k.to_vec();
        s.sort_unstable();
        s.dedup();
        s.len() < self.num_generators() || self.num_generators() == 0
    }

    /// All elements of the parabolic subgroup W_K (K of finite type).
    pub fn parabolic_elements(&self, k: &[usize]) -> Vec<ExtAffElt> {
        let e = ExtAffElt::identity(self);
        let mut seen: HashSet<ExtAffElt> = HashSet::from([e.clone()]);
        let mut out = vec![e.clone()];
        let mut queue = VecDeque::from([e]);
        while let Some(w) = queue.pop_front() {
            for &i in k {
                let x = w.mul(&self.generators[i]);
                if seen.insert(x.clone()) {
                    out.push(x.clone());
                    queue.push_back(x);
                }
            }
        }
        self.sort_shortlex(&mut out);
        out
    }

    /// Longest element of W_K, built by ascending until no generator of K
    /// increases the length.
    pub fn longest_element(&self, k: &[usize]) -> ExtAffElt {
        let mut w = ExtAffElt::identity(self);
        let mut len = 0;
        while let Some(&i) = k.iter().find(|&&i| !self.is_right_descent(&w, i)) {
            w = w.mul(&self.generators[i]);
            len += 1;
            debug_assert_eq!(self.length(&w), len);
        }
        w
    }

    /// Maximum over finite-type K ⊆ S̃ of the length of the longest element
    /// of W_K. By monotonicity only the maximal proper subsets matter.
    pub fn n_max(&self) -> usize {
        let n = self.num_generators();
        (0..n)
            .map(|drop| {
                let k: Vec<usize> = (0..n).filter(|&i| i != drop).collect();
                self.length(&self.longest_element(&k))
            })
            .max()
            .unwrap_or(0)
    }
}

impl Setting {
    /// Image of w in the θ-coinvariants of Ω.
    pub fn kappa(&self, w: &ExtAffElt) -> Vec<i64> {
        self.twist.coinvariants.project(&w.trans).expect("translation lies in Λ")
    }

    /// Newton point via the least n, a multiple of the order of θ, with
    /// w·θ(w)⋯θⁿ⁻¹(w) a translation.
    pub fn newton_point(&self, w: &ExtAffElt) -> NewtonPoint {
        let m = self.twist.order;
        let mut prod = self.identity();
        let mut cur = w.clone();
        let mut k = 0usize;
        loop {
            k += 1;
            prod = prod.mul(&cur);
            cur = self.theta(&cur);
            if k.is_multiple_of(m) && prod.is_translation() {
                break;
            }
        }
        self.newton_point_with_power(w, k)
    }

    /// ν computed from an explicit power n, which must be a multiple of the
    /// order of θ for which the twisted power is a translation.
    pub fn newton_point_with_power(&self, w: &ExtAffElt, n: usize) -> NewtonPoint {
        assert!(n > 0 && n.is_multiple_of(self.twist.order), "power must be a positive multiple of ord(θ)");
        let mut prod = self.identity();
        let mut cur = w.clone();
        for _ in 0..n {
            prod = prod.mul(&cur);
            cur = self.theta(&cur);
        }
        assert!(prod.is_translation(), "twisted power is not a translation");
        let denom = n as i64;
        let nu: Vec<Rational64> = prod.trans.iter().map(|&x| Rational64::new(x, denom)).collect();
        let (nu_bar, _) = self.datum.dominant_rep(&nu);
        NewtonPoint { nu, nu_bar, witness_power: n }
    }

    pub fn pi(&self, w: &ExtAffElt) -> NewtonPair {
        NewtonPair { kappa: self.kappa(w), nu_bar: self.newton_point(w).nu_bar }
    }

    /// ℓ(w) = ⟨ν̄_w, 2ρ⟩.
    pub fn is_straight(&self, w: &ExtAffElt) -> bool {
        let nb = self.newton_point(w).nu_bar;
        Rational64::from_integer(self.length(w) as i64) == self.datum.pair_two_rho(&nb)
    }

    pub(crate) fn closure(&self, start: &ExtAffElt, full: bool) -> Closure {
        let len = self.length(start);
        let mut members = vec![start.clone()];
        let mut parent: Vec<Option<(usize, Conjugator)>> = vec![None];
        let mut index: HashMap<ExtAffElt, usize> = HashMap::from([(start.clone(), 0)]);
        let mut head = 0;
        while head < members.len() {
            let y = members[head].clone();
            let mut found: Vec<(ExtAffElt, Conjugator)> = Vec::new();
            for i in 0..self.datum.num_generators() {
                let z = self.simple_move(i, &y);
                if self.length(&z) == len {
                    found.push((z, Conjugator::Simple(i)));
                }
            }
            for (tau, inv) in &self.omega_moves {
                found.push((tau.mul(&y).mul(inv), Conjugator::Element(tau.clone())));
            }
            if full {
                for (x, inv) in self.conj_moves() {
                    let z = x.mul(&y).mul(inv);
                    if self.length(&z) == len {
                        found.push((z, Conjugator::Element(x.clone())));
                    }
                }
            }
            for (z, c) in found {
                if !index.contains_key(&z) {
                    index.insert(z.clone(), members.len());
                    members.push(z);
                    parent.push(Some((head, c)));
                }
            }
            head += 1;
        }
        Closure { members, parent }
    }

    /// A member of the closure of `w` and a generator strictly lowering its
    /// length under s·(−)·θ(s), chosen by `order`.
    fn pivot(&self, cl: &Closure, order: PivotOrder) -> Option<(usize, usize)> {
        let len = self.length(&cl.members[0]);
        let mut idx: Vec<usize> = (0..cl.members.len()).collect();
        idx.sort_by_cached_key(|&j| self.datum.shortlex_key(&cl.members[j]));
        let mut gens: Vec<usize> = (0..self.datum.num_generators()).collect();
        if order == PivotOrder::Reversed {
            idx.reverse();
            gens.reverse();
        }
        for &s in &gens {
            for &j in &idx {
                if self.length(&self.simple_move(s, &cl.members[j])) < len {
                    return Some((j, s));
                }
            }
        }
        None
    }

    /// A length-preserving chain to some w′ followed by a descent
    /// s·w′·θ(s); `None` when w is of minimal length in its class.
    pub fn find_descent(&self, w: &ExtAffElt, order: PivotOrder) -> Option<(Vec<ReductionStep>, usize)> {
        let cl = self.closure(w, false);
        let (j, s) = self.pivot(&cl, order)?;
        Some((cl.path_to(j), s))
    }

    pub fn is_minimal(&self, w: &ExtAffElt) -> bool {
        if let Some(&b) = self.minimal_cache.lock().unwrap().get(w) {
            return b;
        }
        let cl = self.closure(w, false);
        let b = self.pivot(&cl, PivotOrder::Default).is_none();
        let mut cache = self.minimal_cache.lock().unwrap();
        for m in cl.members {
            cache.insert(m, b);
        }
        b
    }

    pub fn reduce_to_min(&self, w: &ExtAffElt) -> ReductionResult {
        self.reduce_to_min_with(w, PivotOrder::Default)
    }

    pub fn reduce_to_min_with(&self, w: &ExtAffElt, order: PivotOrder) -> ReductionResult {
        let mut path = Vec::new();
        let mut cur = w.clone();
        loop {
            let cl = self.closure(&cur, false);
            match self.pivot(&cl, order) {
                Some((j, s)) => {
                    path.extend(cl.path_to(j));
                    let y = &cl.members[j];
                    let z = self.simple_move(s, y);
                    let change = self.length(&z) as i64 - self.length(y) as i64;
                    path.push(ReductionStep { conjugator: Conjugator::Simple(s), from: y.clone(), to: z.clone(), length_change: change });
                    cur = z;
                }
                None => {
                    let best = (0..cl.members.len())
                        .min_by_key(|&j| self.datum.shortlex_key(&cl.members[j]))
                        .expect("closure is non-empty");
                    path.extend(cl.path_to(best));
                    let minimal_element = cl.members[best].clone();
                    let class_label = self.class_label(&minimal_element);
                    return ReductionResult { minimal_element, path, class_label };
                }
            }
        }
    }

    /// The ≈-closure of `w` (simple moves and Ω moves) at its own length.
    pub fn approx_closure(&self, w: &ExtAffElt) -> Vec<ExtAffElt> {
        let mut v = self.closure(w, false).members;
        self.datum.sort_shortlex(&mut v);
        v
    }

    /// The minimal length elements reachable from a minimal `w` through
    /// length-preserving moves: simple moves, Ω moves and twisted
    /// conjugation by elements of W_a of length at most `conj_depth`.
    pub fn min_closure(&self, w: &ExtAffElt) -> Result<Vec<ExtAffElt>> {
        if !self.is_minimal(w) {
            return Err(Error::Newton(format!(
                "`{}` is not of minimal length in its class",
                self.format_element(w)
            )));
        }
        let mut v = self.closure(w, true).members;
        self.datum.sort_shortlex(&mut v);
        Ok(v)
    }

    /// ShortLex-least element of `min_closure(w)`; `w` must be minimal.
    pub fn class_label(&self, w: &ExtAffElt) -> ExtAffElt {
        if let Some(l) = self.label_cache.lock().unwrap().get(w) {
            return l.clone();
        }
        let members = self.closure(w, true).members;
        let label = members
            .iter()
            .min_by_key(|m| self.datum.shortlex_key(m))
            .expect("closure is non-empty")
            .clone();
        let mut cache = self.label_cache.lock().unwrap();
        for m in members {
            cache.insert(m, label.clone());
        }
        label
    }

    /// Ω-coset coordinates of all W_a-cosets with the same Kottwitz class as
    /// `c`: the coset of `c` shifted by the image of 1 − δ.
    fn kappa_cosets(&self, c: &[i64]) -> Vec<Vec<i64>> {
        let q = &self.datum.omega.quotient;
        let mut shifts: Vec<Vec<i64>> = Vec::new();
        for i in 0..q.ngens() {
            let lam = q.lift(&q.generator(i));
            let d = self.twist.delta_vec(&lam);
            let diff: Vec<i64> = lam.iter().zip(&d).map(|(a, b)| a - b).collect();
            let img = q.project(&diff).expect("difference lies in Λ");
            if img != q.zero() {
                shifts.push(img);
            }
        }
        let start = q.normalize(c.to_vec());
        let mut seen: HashSet<Vec<i64>> = HashSet::from([start.clone()]);
        let mut out = vec![start.clone()];
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for s in &shifts {
                for y in [q.add(&x, s), q.add(&x, &q.neg(s))] {
                    if seen.insert(y.clone()) {
                        out.push(y.clone());
                        queue.push_back(y);
                    }
                }
            }
        }
        out.sort();
        out
    }

    /// All minimal length elements w with π(w) = π(seed), grouped into
    /// classes.
    pub fn fiber_min(&self, seed: &ExtAffElt) -> FiberReport {
        let nu = self.pi(seed);
        let pairing = self.datum.pair_two_rho(&nu.nu_bar);
        let bound = pairing.floor().to_integer() + self.nmax() as i64;
        let mut groups: BTreeMap<ShortLexKey, (ExtAffElt, Vec<ExtAffElt>)> = BTreeMap::new();
        for c in self.kappa_cosets(&self.datum.omega_coset(seed)) {
            let tau = self.datum.omega_rep(&c);
            let ball = self.datum.enumerate_coset_ball(&tau, bound).expect("bound is non-negative");
            for w in ball {
                if self.kappa(&w) != nu.kappa || !self.is_minimal(&w) || self.pi(&w) != nu {
                    continue;
                }
                let label = self.class_label(&w);
                let key = self.datum.shortlex_key(&label);
                groups.entry(key).or_insert_with(|| (label, Vec::new())).1.push(w);
            }
        }
        let mut classes: Vec<FiberClass> = Vec::new();
        for (label, mut elems) in groups.into_values() {
            self.datum.sort_shortlex(&mut elems);
            let straight = self.is_straight(&label);
            classes.push(FiberClass { label, minimal_elements: elems, straight });
        }
        let n_nu = classes.iter().map(|c| c.minimal_elements.len()).sum();
        FiberReport { nu, classes, n_nu }
    }

    /// Whether Ad(x)∘θ maps the generators in K onto K.
    pub fn ad_theta_stable(&self, x: &ExtAffElt, k: &[usize]) -> bool {
        let xinv = x.inv();
        k.iter().all(|&i| {
            let img = x.mul(&self.datum.generators[self.twist.gen_perm[i]]).mul(&xinv);
            k.iter().any(|&j| self.datum.generators[j] == img)
        })
    }

    /// All subsets K ⊆ S̃ of finite type, ordered by size then
    /// lexicographically.
    pub fn finite_subsets(&self) -> Vec<Vec<usize>> {
        let n = self.datum.num_generators();
        let mut out: Vec<Vec<usize>> = (0u32..(1u32 << n))
            .map(|mask| (0..n).filter(|&i| mask & (1 << i) != 0).collect::<Vec<usize>>())
            .filter(|k| self.datum.is_finite_type(k))
            .collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    /// Standard triples (x, K, u) for the fiber of `seed`: x runs over the
    /// minimal elements of the straight class, K over finite-type subsets
    /// with x ∈ ᴷW̃ and Ad(x)θ(K) = K, u over W_K with u·x minimal.
    pub fn standard_triples(&self, seed: &ExtAffElt) -> Result<Vec<StandardTriple>> {
        let fiber = self.fiber_min(seed);
        let straight: Vec<&FiberClass> = fiber.classes.iter().filter(|c| c.straight).collect();
        let class = match straight.as_slice() {
            [c] => *c,
            _ => {
                return Err(Error::Newton(format!(
                    "fiber has {} straight classes, expected exactly one",
                    straight.len()
                )))
            }
        };
        let subsets = self.finite_subsets();
        let mut out = Vec::new();
        for x in &class.minimal_elements {
            for k in &subsets {
                if k.iter().any(|&i| self.datum.is_left_descent(x, i)) || !self.ad_theta_stable(x, k) {
                    continue;
                }
                for u in self.datum.parabolic_elements(k) {
                    let ux = u.mul(x);
                    if self.is_minimal(&ux) {
                        out.push(StandardTriple { x: x.clone(), k: k.clone(), u });
                    }
                }
            }
        }
        Ok(out)
    }
}

pub fn zero_pair(st: &Setting) -> NewtonPair {
    NewtonPair { kappa: st.twist.coinvariants.zero(), nu_bar: vec![Rational64::zero(); st.datum.dim()] }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_datum::{build_root_datum, CartanSpec, LatticeSpec};
    use crate::lattice::rational_vec;

    fn setting(t: &str, l: LatticeSpec, labels: &[(&str, Vec<i64>)], omega: Option<&str>) -> Setting {
        let rd = build_root_datum(&CartanSpec::new(t, l)).unwrap();
        let labels: Vec<(String, Vec<i64>)> = labels.iter().map(|(n, v)| (n.to_string(), v.clone())).collect();
        Setting::build(rd, &labels, None, omega, None).unwrap()
    }

    fn a1() -> Setting {
        setting("A1", LatticeSpec::SimplyConnected, &[], None)
    }

    fn el(st: &Setting, s: &str) -> ExtAffElt {
        st.parse_element(s).unwrap()
    }

    #[test]
    fn nmax_values() {
        assert_eq!(a1().nmax(), 1);
        assert_eq!(setting("A2", LatticeSpec::SimplyConnected, &[], None).nmax(), 3);
        assert_eq!(setting("C2", LatticeSpec::SimplyConnected, &[], None).nmax(), 4);
        assert_eq!(setting("G2", LatticeSpec::SimplyConnected, &[], None).nmax(), 6);
        let mut spec = CartanSpec::new("T", LatticeSpec::Adjoint);
        spec.central_rank = 1;
        let rd = build_root_datum(&spec).unwrap();
        assert_eq!(rd.n_max(), 0);
    }

    #[test]
    fn kappa_examples() {
        let st = a1();
        assert!(st.kappa(&el(&st, "s0 s1")).is_empty());
        let st = setting("A1", LatticeSpec::Adjoint, &[("p", vec![1])], None);
        assert_eq!(st.kappa(&el(&st, "p")), vec![1]);
        let st = setting("A1", LatticeSpec::Adjoint, &[("p", vec![1])], Some("p"));
        assert_eq!(st.kappa(&el(&st, "p")), vec![1]);
        assert_eq!(st.kappa(&el(&st, "s0 p")), vec![1]);
    }

    #[test]
    fn newton_examples() {
        let st = a1();
        let np = st.newton_point(&el(&st, "s0 s1"));
        assert_eq!(np.nu_bar, rational_vec(&[2]));
        assert_eq!(np.witness_power, 1);
        assert!(st.pi(&el(&st, "s1")).nu_bar.iter().all(|x| x.is_zero()));

        let st = setting("A1", LatticeSpec::Adjoint, &[("p", vec![1])], Some("p"));
        let np = st.newton_point(&el(&st, "s0"));
        assert_eq!(np.nu, rational_vec(&[1]));
        assert_eq!(np.witness_power, 2);
        assert_eq!(st.newton_point_with_power(&el(&st, "s0"), 4).nu, np.nu);
    }

    #[test]
    fn straightness() {
        let st = a1();
        assert!(st.is_straight(&el(&st, "")));
        assert!(st.is_straight(&el(&st, "s0 s1")));
        assert!(!st.is_straight(&el(&st, "s0 s1 s0")));
    }

    #[test]
    fn reduction_a1() {
        let st = a1();
        let r = st.reduce_to_min(&el(&st, "s0 s1 s0"));
        assert_eq!(r.minimal_element, el(&st, "s1"));
        assert_eq!(r.path.len(), 1);
        assert_eq!(r.path[0].conjugator, Conjugator::Simple(0));
        assert_eq!(r.path[0].length_change, -2);

        let w = el(&st, "s1");
        let r = st.reduce_to_min(&w);
        assert!(r.path.is_empty());
        assert_eq!(r.minimal_element, w);
        assert_eq!(r.class_label, w);
    }

    #[test]
    fn reduction_inner_twist() {
        let st = setting("A1", LatticeSpec::Adjoint, &[("p", vec![1])], Some("p"));
        let r = st.reduce_to_min(&el(&st, "s1"));
        assert_eq!(r.minimal_element, el(&st, "s0"));
        assert_eq!(r.class_label, el(&st, "s0"));
        assert_eq!(st.approx_closure(&el(&st, "s1")), vec![el(&st, "s0"), el(&st, "s1")]);
    }

    #[test]
    fn closures_a1() {
        let st = a1();
        assert_eq!(st.min_closure(&el(&st, "s0 s1")).unwrap(), vec![el(&st, "s0 s1"), el(&st, "s1 s0")]);
        assert_eq!(st.min_closure(&el(&st, "s1")).unwrap(), vec![el(&st, "s1")]);
        assert_eq!(st.min_closure(&el(&st, "")).unwrap(), vec![el(&st, "")]);
        assert!(st.min_closure(&el(&st, "s0 s1 s0")).is_err());
    }

    #[test]
    fn a2_reflections_share_a_label() {
        let st = setting("A2", LatticeSpec::SimplyConnected, &[], None);
        assert_eq!(st.class_label(&el(&st, "s1")), st.class_label(&el(&st, "s2")));
        assert_eq!(st.class_label(&el(&st, "s2")), el(&st, "s0"));
    }

    #[test]
    fn fiber_examples() {
        let st = a1();
        let f = st.fiber_min(&el(&st, ""));
        assert_eq!(f.n_nu, 3);
        let labels: Vec<ExtAffElt> = f.classes.iter().map(|c| c.label.clone()).collect();
        assert_eq!(labels, vec![el(&st, ""), el(&st, "s0"), el(&st, "s1")]);
        assert_eq!(f.classes.iter().filter(|c| c.straight).count(), 1);

        let f = st.fiber_min(&el(&st, "s0 s1"));
        assert_eq!(f.n_nu, 2);
        assert_eq!(f.classes.len(), 1);
        assert!(f.classes[0].straight);

        let st = setting("A1", LatticeSpec::Adjoint, &[("p", vec![1])], None);
        let f = st.fiber_min(&el(&st, "p"));
        assert_eq!(f.n_nu, 1);
        assert_eq!(f.classes[0].minimal_elements, vec![el(&st, "p")]);
    }

    #[test]
    fn triples_a1() {
        let st = a1();
        let t = st.standard_triples(&el(&st, "")).unwrap();
        let got: Vec<(Vec<usize>, ExtAffElt)> = t.iter().map(|t| (t.k.clone(), t.u.clone())).collect();
        assert_eq!(
            got,
            vec![(vec![], el(&st, "")), (vec![0], el(&st, "")), (vec![0], el(&st, "s0")), (vec![1], el(&st, "")), (vec![1], el(&st, "s1"))]
        );
        let t = st.standard_triples(&el(&st, "s0 s1")).unwrap();
        assert!(t.iter().all(|t| t.k.is_empty()));
        let mut prods: Vec<ExtAffElt> = t.iter().map(|t| t.product()).collect();
        st.datum.sort_shortlex(&mut prods);
        assert_eq!(prods, vec![el(&st, "s0 s1"), el(&st, "s1 s0")]);
    }

    fn c2_twisted() -> Setting {
        setting("C2", LatticeSpec::Adjoint, &[], Some("o[0, 1]"))
    }

    proptest::proptest! {
        #[test]
        fn simple_moves_change_length_by_zero_or_two(word in proptest::collection::vec(0usize..3, 0..12), i in 0usize..3) {
            let st = c2_twisted();
            let w = st.datum.word_element(&word);
            let d = st.length(&st.simple_move(i, &w)) as i64 - st.length(&w) as i64;
            proptest::prop_assert!([-2, 0, 2].contains(&d));
        }

        #[test]
        fn reduction_preserves_pi_and_lands_on_minimal(word in proptest::collection::vec(0usize..3, 0..12)) {
            let st = c2_twisted();
            let w = st.datum.word_element(&word);
            let r = st.reduce_to_min(&w);
            proptest::prop_assert_eq!(st.pi(&r.minimal_element), st.pi(&w));
            proptest::prop_assert!(st.is_minimal(&r.minimal_element));
            proptest::prop_assert!(st.length(&r.minimal_element) <= st.length(&w));
        }
    }
}
