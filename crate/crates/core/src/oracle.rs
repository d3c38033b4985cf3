//! Brute-force reference implementations for tests and fixture generation.
//!
//! Elements are plain integer affine maps on ambient coordinates. Roots,
//! coroots and the affine generators are rebuilt from the Cartan matrix,
//! lengths are inversion counts, and nothing here calls the length formula,
//! normal forms, closures or reduction code of the main modules.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};

use num_rational::Rational64;
use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use crate::root_datum::{build_root_datum, CartanSpec, LatticeSpec};
use crate::setting::Setting;
use crate::weyl::ExtAffElt;

/// x ↦ m·x + b on ambient integer coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Affine {
    pub dim: usize,
    pub m: Vec<i64>,
    pub b: Vec<i64>,
}

impl Affine {
    pub fn identity(dim: usize) -> Self {
        let mut m = vec![0; dim * dim];
        for i in 0..dim {
            m[i * dim + i] = 1;
        }
        Affine { dim, m, b: vec![0; dim] }
    }

    pub fn from_elt(w: &ExtAffElt) -> Self {
        let dim = w.trans.len();
        let r = w.fin.rank();
        let mut a = Affine::identity(dim);
        let fm = w.fin.matrix();
        for i in 0..r {
            for j in 0..r {
                a.m[i * dim + j] = fm[i * r + j];
            }
        }
        a.b = w.trans.clone();
        a
    }

    fn mat_vec(&self, v: &[i64]) -> Vec<i64> {
        (0..self.dim).map(|i| (0..self.dim).map(|j| self.m[i * self.dim + j] * v[j]).sum()).collect()
    }

    /// self ∘ other.
    pub fn compose(&self, other: &Affine) -> Affine {
        let n = self.dim;
        let mut m = vec![0; n * n];
        for i in 0..n {
            for k in 0..n {
                for j in 0..n {
                    m[i * n + j] += self.m[i * n + k] * other.m[k * n + j];
                }
            }
        }
        let b = self.mat_vec(&other.b).iter().zip(&self.b).map(|(x, y)| x + y).collect();
        Affine { dim: n, m, b }
    }

    fn linear(&self) -> Affine {
        Affine { dim: self.dim, m: self.m.clone(), b: vec![0; self.dim] }
    }

    pub fn is_translation(&self) -> bool {
        self.m == Affine::identity(self.dim).m
    }

    /// Inverse, using that the linear part has finite order.
    pub fn inverse(&self) -> Affine {
        let lin = self.linear();
        let mut prev = Affine::identity(self.dim);
        let mut p = lin.clone();
        while !p.is_translation() {
            prev = p.clone();
            p = p.compose(&lin);
        }
        let b = prev.mat_vec(&self.b).into_iter().map(|x| -x).collect();
        Affine { dim: self.dim, m: prev.m, b }
    }
}

fn pair(x: &[i64], root: &[i64]) -> i64 {
    root.iter().zip(x).map(|(a, b)| a * b).sum()
}

/// The oracle's own model of a setting.
pub struct Model {
    pub dim: usize,
    pub rank: usize,
    pub pos_roots: Vec<Vec<i64>>,
    pub two_rho: Vec<i64>,
    pub gens: Vec<Affine>,
    delta: Vec<usize>,
    tau0: Affine,
    tau0_inv: Affine,
    pub order: usize,
    pub omegas: Vec<Affine>,
}

impl Model {
    pub fn new(st: &Setting) -> Self {
        let rd = &st.datum;
        let rank = rd.rank;
        let dim = rd.dim();
        let a: Vec<Vec<i64>> = (0..rank).map(|i| (0..rank).map(|j| rd.cartan.get(i, j)).collect()).collect();

        // roots: orbit of the simple roots under simple reflections
        let mut roots: BTreeSet<Vec<i64>> = BTreeSet::new();
        let mut queue: VecDeque<Vec<i64>> = VecDeque::new();
        for i in 0..rank {
            let mut e = vec![0; rank];
            e[i] = 1;
            if roots.insert(e.clone()) {
                queue.push_back(e);
            }
        }
        while let Some(beta) = queue.pop_front() {
            for i in 0..rank {
                let c: i64 = (0..rank).map(|j| a[i][j] * beta[j]).sum();
                let mut img = beta.clone();
                img[i] -= c;
                if roots.insert(img.clone()) {
                    queue.push_back(img);
                }
            }
        }
        let pos_roots: Vec<Vec<i64>> = roots.into_iter().filter(|r| r.iter().all(|&x| x >= 0)).collect();
        let two_rho: Vec<i64> = (0..rank).map(|j| pos_roots.iter().map(|r| r[j]).sum()).collect();

        // symmetrizer d with d_i a_ij = d_j a_ji
        let mut d = vec![Rational64::zero(); rank];
        for start in 0..rank {
            if !d[start].is_zero() {
                continue;
            }
            d[start] = Rational64::from_integer(1);
            let mut stack = vec![start];
            while let Some(i) = stack.pop() {
                for j in 0..rank {
                    if a[i][j] != 0 && i != j && d[j].is_zero() {
                        d[j] = d[i] * Rational64::new(a[i][j], a[j][i]);
                        stack.push(j);
                    }
                }
            }
        }
        let form = |x: &[i64], y: &[i64]| -> Rational64 {
            let mut s = Rational64::zero();
            for i in 0..rank {
                for j in 0..rank {
                    s += d[i] * Rational64::from_integer(a[i][j] * x[i] * y[j]);
                }
            }
            s
        };
        let coroot = |beta: &[i64]| -> Vec<i64> {
            let bb = form(beta, beta);
            let mut v = vec![0; dim];
            for (j, x) in v.iter_mut().enumerate().take(rank) {
                let mut e = vec![0; rank];
                e[j] = 1;
                let c = Rational64::from_integer(2) * form(beta, &e) / bb;
                assert!(c.is_integer());
                *x = c.to_integer();
            }
            v
        };
        let reflection = |beta: &[i64], k: i64| -> Affine {
            let cv = coroot(beta);
            let mut r = Affine::identity(dim);
            for i in 0..rank {
                for j in 0..rank {
                    r.m[i * dim + j] -= cv[i] * beta[j];
                }
            }
            r.b = cv.iter().map(|x| x * k).collect();
            r
        };
        let mut gens = Vec::new();
        if rank > 0 {
            let highest = pos_roots.iter().max_by_key(|r| r.iter().sum::<i64>()).unwrap().clone();
            gens.push(reflection(&highest, 1));
            for i in 0..rank {
                let mut e = vec![0; rank];
                e[i] = 1;
                gens.push(reflection(&e, 0));
            }
        }

        let mut delta: Vec<usize> = (0..dim).collect();
        delta[..rank].copy_from_slice(&st.twist.perm);
        let tau0 = Affine::from_elt(&st.twist.tau0);
        let tau0_inv = tau0.inverse();
        let omegas = rd.torsion_omega().iter().map(Affine::from_elt).collect();
        let mut model = Model { dim, rank, pos_roots, two_rho, gens, delta, tau0, tau0_inv, order: 1, omegas };

        let mut probes = model.gens.clone();
        for j in 0..dim {
            let mut t = Affine::identity(dim);
            t.b[j] = 1;
            probes.push(t);
        }
        let mut cur = probes.clone();
        for k in 1..=1000 {
            cur = cur.iter().map(|p| model.theta(p)).collect();
            if cur == probes {
                model.order = k;
                break;
            }
        }
        model
    }

    pub fn elt(&self, w: &ExtAffElt) -> Affine {
        Affine::from_elt(w)
    }

    pub fn theta(&self, w: &Affine) -> Affine {
        let n = self.dim;
        let mut d = Affine::identity(n);
        d.m = vec![0; n * n];
        for i in 0..n {
            d.b[self.delta[i]] = w.b[i];
            for j in 0..n {
                d.m[self.delta[i] * n + self.delta[j]] = w.m[i * n + j];
            }
        }
        self.tau0.compose(&d).compose(&self.tau0_inv)
    }

    pub fn twisted_conj(&self, x: &Affine, w: &Affine) -> Affine {
        x.compose(w).compose(&self.theta(x).inverse())
    }

    /// Number of positive affine roots a with a∘w negative, i.e. ℓ(w⁻¹) = ℓ(w).
    fn inversions(&self, w: &Affine, kmax: i64) -> usize {
        let n = self.dim;
        let mut count = 0;
        for r in &self.pos_roots {
            for sign in [1i64, -1] {
                let alpha: Vec<i64> = r.iter().map(|x| x * sign).collect();
                let lam = pair(&w.b, &alpha);
                let grad: Vec<i64> = (0..self.rank)
                    .map(|j| (0..self.rank).map(|i| alpha[i] * w.m[i * n + j]).sum())
                    .collect();
                let grad_neg = grad.iter().all(|&x| x <= 0);
                let kmin = if sign > 0 { 0 } else { 1 };
                for k in kmin..=kmax {
                    let level = lam + k;
                    if level < 0 || (level == 0 && grad_neg) {
                        count += 1;
                    }
                }
            }
        }
        count
    }

    pub fn length(&self, w: &Affine) -> usize {
        let k = self.pos_roots.iter().map(|r| pair(&w.b, r).abs()).max().unwrap_or(0) + 1;
        let c = self.inversions(w, k);
        assert_eq!(c, self.inversions(w, 2 * k + 1), "inversion bound too small");
        c
    }

    pub fn is_left_descent(&self, w: &Affine, i: usize) -> bool {
        self.length(&self.gens[i].compose(w)) < self.length(w)
    }

    pub fn is_right_descent(&self, w: &Affine, i: usize) -> bool {
        self.length(&w.compose(&self.gens[i])) < self.length(w)
    }

    /// Elements of W_a·τ of length ≤ bound, by breadth-first search over words.
    pub fn ball(&self, tau: &Affine, bound: usize) -> Vec<Affine> {
        let mut seen: HashSet<Affine> = HashSet::from([tau.clone()]);
        let mut layer = vec![tau.clone()];
        let mut out = vec![tau.clone()];
        for _ in 0..bound {
            let mut next = Vec::new();
            for w in &layer {
                for g in &self.gens {
                    let x = g.compose(w);
                    if seen.insert(x.clone()) {
                        next.push(x);
                    }
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out.retain(|w| self.length(w) <= bound);
        out
    }

    /// Word form `s.. s.. o[μ]` via greedy stripping of left descents.
    pub fn word_string(&self, w: &Affine) -> String {
        let mut cur = w.clone();
        let mut toks = Vec::new();
        loop {
            let l = self.length(&cur);
            match (0..self.gens.len()).find(|&i| self.length(&self.gens[i].compose(&cur)) < l) {
                Some(i) => {
                    toks.push(format!("s{i}"));
                    cur = self.gens[i].compose(&cur);
                }
                None => break,
            }
        }
        if cur != Affine::identity(self.dim) {
            let v: Vec<String> = cur.b.iter().map(|x| x.to_string()).collect();
            toks.push(format!("o[{}]", v.join(",")));
        }
        if toks.is_empty() {
            "e".into()
        } else {
            toks.join(" ")
        }
    }

    /// { x·w·θ(x)⁻¹ : x ∈ W_a·τ, ℓ(x) ≤ depth, τ ∈ Ω torsion }.
    pub fn class_ball(&self, w: &Affine, depth: usize) -> Vec<Affine> {
        let mut out: BTreeSet<Affine> = BTreeSet::new();
        for tau in &self.omegas {
            for x in self.ball(tau, depth) {
                out.insert(self.twisted_conj(&x, w));
            }
        }
        out.into_iter().collect()
    }

    fn twisted_power(&self, w: &Affine, k: usize) -> Affine {
        let mut p = Affine::identity(self.dim);
        let mut cur = w.clone();
        for _ in 0..k {
            p = p.compose(&cur);
            cur = self.theta(&cur);
        }
        p
    }

    /// Dominant Newton vector.
    pub fn newton(&self, w: &Affine) -> Vec<Rational64> {
        self.newton_with_power(w).0
    }

    /// Dominant Newton vector and the least witness power.
    pub fn newton_with_power(&self, w: &Affine) -> (Vec<Rational64>, usize) {
        let mut k = self.order;
        let mut p = self.twisted_power(w, k);
        while !p.is_translation() {
            k += self.order;
            p = self.twisted_power(w, k);
        }
        let mut nu: Vec<Rational64> = p.b.iter().map(|&x| Rational64::new(x, k as i64)).collect();
        // dominant representative: reflect through negative simple coordinates
        while let Some(i) = (0..self.rank).find(|&i| nu[i].is_negative()) {
            let g = &self.gens[i + 1];
            let c = nu.clone();
            for (r, x) in nu.iter_mut().enumerate() {
                *x = (0..self.dim).map(|j| c[j] * g.m[r * self.dim + j]).sum();
            }
        }
        (nu, k)
    }

    pub fn two_rho_pairing(&self, nu: &[Rational64]) -> Rational64 {
        self.two_rho.iter().zip(nu).map(|(&a, &b)| b * a).sum()
    }

    /// ℓ((wθ)^k) = k·ℓ(w) for k = 1..=kmax.
    pub fn straight(&self, w: &Affine, kmax: usize) -> bool {
        let l = self.length(w);
        (1..=kmax).all(|k| self.length(&self.twisted_power(w, k)) == k * l)
    }

    pub fn nmax(&self) -> usize {
        let n = self.gens.len();
        (0..n)
            .map(|drop| {
                let mut w = Affine::identity(self.dim);
                loop {
                    let l = self.length(&w);
                    match (0..n).filter(|&i| i != drop).find(|&i| self.length(&w.compose(&self.gens[i])) > l) {
                        Some(i) => w = w.compose(&self.gens[i]),
                        None => break l,
                    }
                }
            })
            .max()
            .unwrap_or(0)
    }

    pub fn is_minimal(&self, w: &Affine, depth: usize) -> bool {
        let l = self.length(w);
        self.class_ball(w, depth).iter().all(|y| self.length(y) >= l)
    }

    /// Minimal elements of W_a·τ (τ over `taus`) with the given Newton
    /// vector, grouped into classes via class balls. Only meaningful when
    /// the Kottwitz class is determined by the coset.
    pub fn fiber(&self, taus: &[Affine], nu: &[Rational64], depth: usize) -> Vec<Vec<Affine>> {
        let bound = self.two_rho_pairing(nu).floor().to_integer() as usize + self.nmax();
        let mut mins = Vec::new();
        for tau in taus {
            for w in self.ball(tau, bound) {
                if self.newton(&w) == nu && self.is_minimal(&w, depth) {
                    mins.push(w);
                }
            }
        }
        let mut classes: Vec<Vec<Affine>> = Vec::new();
        for w in mins {
            let cb: HashSet<Affine> = self.class_ball(&w, depth).into_iter().collect();
            match classes.iter_mut().find(|c| cb.contains(&c[0])) {
                Some(c) => c.push(w),
                None => classes.push(vec![w]),
            }
        }
        classes
    }

    /// T_f·T_g by multiplying generator by generator on the left.
    pub fn hecke_mul(&self, f: &BTreeMap<Affine, Vec<i64>>, g: &BTreeMap<Affine, Vec<i64>>) -> BTreeMap<Affine, Vec<i64>> {
        let mut out: BTreeMap<Affine, Vec<i64>> = BTreeMap::new();
        for (x, cx) in f {
            // x = s_{i1} ⋯ s_{ik} τ
            let mut word = Vec::new();
            let mut cur = x.clone();
            loop {
                let l = self.length(&cur);
                match (0..self.gens.len()).find(|&i| self.length(&self.gens[i].compose(&cur)) < l) {
                    Some(i) => {
                        word.push(i);
                        cur = self.gens[i].compose(&cur);
                    }
                    None => break,
                }
            }
            for (y, cy) in g {
                let mut acc: BTreeMap<Affine, Vec<i64>> = BTreeMap::new();
                acc.insert(cur.compose(y), poly_mul(cx, cy));
                for &i in word.iter().rev() {
                    let s = &self.gens[i];
                    let mut next: BTreeMap<Affine, Vec<i64>> = BTreeMap::new();
                    for (z, c) in acc {
                        let sz = s.compose(&z);
                        if self.length(&sz) > self.length(&z) {
                            poly_add_into(&mut next, sz, &c);
                        } else {
                            poly_add_into(&mut next, z, &poly_mul(&c, &[-1, 1]));
                            poly_add_into(&mut next, sz, &poly_mul(&c, &[0, 1]));
                        }
                    }
                    acc = next;
                }
                for (z, c) in acc {
                    poly_add_into(&mut out, z, &c);
                }
            }
        }
        out
    }

    /// Cocenter image of T_w by naive rewriting: search the length-preserving
    /// simple-move orbit for a descent, else keep the term; finally merge
    /// terms whose representatives are conjugate within `depth`.
    pub fn cocenter(&self, w: &Affine, depth: usize) -> Vec<(Affine, Vec<i64>)> {
        let mut work: BTreeMap<(usize, Affine), Vec<i64>> = BTreeMap::new();
        work.insert((self.length(w), w.clone()), vec![1]);
        let mut kept: Vec<(Affine, Vec<i64>)> = Vec::new();
        while let Some(((l, x), c)) = work.pop_last() {
            if c.iter().all(|&v| v == 0) {
                continue;
            }
            let mut seen: HashSet<Affine> = HashSet::from([x.clone()]);
            let mut queue = VecDeque::from([x.clone()]);
            let mut hit = None;
            'search: while let Some(y) = queue.pop_front() {
                for (i, s) in self.gens.iter().enumerate() {
                    let z = s.compose(&y).compose(&self.theta(s).inverse());
                    let lz = self.length(&z);
                    if lz < l {
                        hit = Some((y.clone(), i));
                        break 'search;
                    }
                    if lz == l && seen.insert(z.clone()) {
                        queue.push_back(z);
                    }
                }
            }
            match hit {
                None => kept.push((x, c)),
                Some((y, i)) => {
                    let s = &self.gens[i];
                    let sy = s.compose(&y);
                    let sys = sy.compose(&self.theta(s).inverse());
                    let e1 = work.entry((self.length(&sy), sy)).or_default();
                    *e1 = poly_add(e1, &poly_mul(&c, &[-1, 1]));
                    let e2 = work.entry((self.length(&sys), sys)).or_default();
                    *e2 = poly_add(e2, &poly_mul(&c, &[0, 1]));
                }
            }
        }
        let mut merged: Vec<(Affine, Vec<i64>)> = Vec::new();
        for (x, c) in kept {
            let cb: HashSet<Affine> = self.class_ball(&x, depth).into_iter().collect();
            match merged.iter_mut().find(|(r, _)| cb.contains(r)) {
                Some((_, acc)) => *acc = poly_add(acc, &c),
                None => merged.push((x, c)),
            }
        }
        merged.retain(|(_, c)| c.iter().any(|&v| v != 0));
        merged
    }
}

fn trim(mut p: Vec<i64>) -> Vec<i64> {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

pub fn poly_add(a: &[i64], b: &[i64]) -> Vec<i64> {
    let n = a.len().max(b.len());
    trim((0..n).map(|i| a.get(i).unwrap_or(&0) + b.get(i).unwrap_or(&0)).collect())
}

pub fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut c = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            c[i + j] += x * y;
        }
    }
    trim(c)
}

fn poly_add_into(map: &mut BTreeMap<Affine, Vec<i64>>, k: Affine, c: &[i64]) {
    let e = map.entry(k.clone()).or_default();
    *e = poly_add(e, c);
    if e.is_empty() {
        map.remove(&k);
    }
}

/// Settings used by the golden fixtures, keyed by name.
pub fn fixture_setting(name: &str) -> Setting {
    let (t, lattice, labels, perm, omega): (&str, LatticeSpec, Vec<(String, Vec<i64>)>, Option<Vec<usize>>, Option<&str>) =
        match name {
            "a1_sc" => ("A1", LatticeSpec::SimplyConnected, vec![], None, None),
            "a1_ad" => ("A1", LatticeSpec::Adjoint, vec![("p".into(), vec![1])], None, None),
            "a1_ad_inner" => ("A1", LatticeSpec::Adjoint, vec![("p".into(), vec![1])], None, Some("p")),
            "a2_sc" => ("A2", LatticeSpec::SimplyConnected, vec![], None, None),
            "a2_ad" => ("A2", LatticeSpec::Adjoint, vec![], None, None),
            "a2_sc_diag" => ("A2", LatticeSpec::SimplyConnected, vec![], Some(vec![1, 0]), None),
            "c2_sc" => ("C2", LatticeSpec::SimplyConnected, vec![], None, None),
            "c2_ad" => ("C2", LatticeSpec::Adjoint, vec![], None, None),
            _ => panic!("unknown fixture setting {name}"),
        };
    let rd = build_root_datum(&CartanSpec::new(t, lattice)).expect("fixture datum");
    Setting::build(rd, &labels, perm, omega, None).expect("fixture setting")
}

pub const FIXTURE_SETTINGS: &[&str] = &["a1_sc", "a1_ad", "a1_ad_inner", "a2_sc", "a2_ad", "a2_sc_diag", "c2_sc", "c2_ad"];

fn rat_strings(v: &[Rational64]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

/// Golden values, all computed by the oracle alone.
pub fn generate_fixtures() -> Value {
    let mut settings = serde_json::Map::new();
    for &name in FIXTURE_SETTINGS {
        let st = fixture_setting(name);
        let m = Model::new(&st);
        let radius = if st.datum.rank == 1 { 6 } else { 4 };
        let mut elements = Vec::new();
        for tau in &m.omegas {
            for w in m.ball(tau, radius) {
                let descents_left: Vec<usize> = (0..m.gens.len()).filter(|&i| m.is_left_descent(&w, i)).collect();
                let descents_right: Vec<usize> = (0..m.gens.len()).filter(|&i| m.is_right_descent(&w, i)).collect();
                let (nu, n) = m.newton_with_power(&w);
                let kmax = 2 * n;
                elements.push(json!({
                    "word": m.word_string(&w),
                    "length": m.length(&w),
                    "left_descents": descents_left,
                    "right_descents": descents_right,
                    "nu_bar": rat_strings(&nu),
                    "straight": m.straight(&w, kmax),
                }));
            }
        }
        settings.insert(name.to_string(), json!({ "nmax": m.nmax(), "order": m.order, "elements": elements }));
    }

    // fibers over simply connected data, where κ is trivial
    let mut fibers = Vec::new();
    for (name, seeds, depth) in [
        ("a1_sc", vec!["e", "s0 s1", "s0 s1 s0 s1"], 4usize),
        ("a2_sc", vec!["e", "s0 s1", "s0 s1 s2"], 4),
        ("a2_sc_diag", vec!["e", "s0", "s1 s2"], 4),
    ] {
        let st = fixture_setting(name);
        let m = Model::new(&st);
        for seed in seeds {
            let w = m.elt(&st.parse_element(seed).expect("fixture word"));
            let nu = m.newton(&w);
            let classes = m.fiber(&m.omegas[..1], &nu, depth);
            let classes_json: Vec<Vec<String>> = classes.iter().map(|c| c.iter().map(|x| m.word_string(x)).collect()).collect();
            let count: usize = classes.iter().map(|c| c.len()).sum();
            fibers.push(json!({
                "setting": name,
                "seed": seed,
                "nu_bar": rat_strings(&nu),
                "classes": classes_json,
                "n_nu": count,
            }));
        }
    }

    let mut cocenter = Vec::new();
    for (name, words) in [
        ("a1_sc", vec!["s0 s1 s0", "s1 s0 s1", "s0 s1 s0 s1 s0"]),
        ("a1_ad_inner", vec!["s1 s0", "s0 s1 s0", "s1 p"]),
        ("a2_sc", vec!["s1 s2 s1", "s0 s1 s2 s1"]),
    ] {
        let st = fixture_setting(name);
        let m = Model::new(&st);
        for word in words {
            let w = m.elt(&st.parse_element(word).expect("fixture word"));
            let terms: Vec<Value> = m
                .cocenter(&w, 4)
                .into_iter()
                .map(|(x, c)| json!({ "rep": m.word_string(&x), "coeffs": c }))
                .collect();
            cocenter.push(json!({ "setting": name, "word": word, "terms": terms }));
        }
    }

    let mut hecke = Vec::new();
    {
        let st = fixture_setting("a1_sc");
        let m = Model::new(&st);
        let ball = m.ball(&m.omegas[0], 4);
        for (i, x) in ball.iter().enumerate() {
            for y in ball.iter().skip(i % 3).step_by(3) {
                let f = BTreeMap::from([(x.clone(), vec![1])]);
                let g = BTreeMap::from([(y.clone(), vec![1])]);
                let terms: Vec<Value> = m
                    .hecke_mul(&f, &g)
                    .into_iter()
                    .map(|(z, c)| json!({ "word": m.word_string(&z), "coeffs": c }))
                    .collect();
                hecke.push(json!({ "x": m.word_string(x), "y": m.word_string(y), "terms": terms }));
            }
        }
    }

    let mut dcosets = Vec::new();
    {
        let st = fixture_setting("a1_sc");
        let m = Model::new(&st);
        for (k, k2, bound) in [(vec![], vec![], 1usize), (vec![0usize], vec![1usize], 2), (vec![0], vec![0], 2), (vec![1], vec![0], 4)] {
            let reps: Vec<String> = m
                .ball(&m.omegas[0], bound)
                .into_iter()
                .filter(|x| k.iter().all(|&i| !m.is_left_descent(x, i)) && k2.iter().all(|&i| !m.is_right_descent(x, i)))
                .map(|x| m.word_string(&x))
                .collect();
            dcosets.push(json!({ "setting": "a1_sc", "k": k, "k2": k2, "bound": bound, "reps": reps }));
        }
    }

    json!({
        "settings": settings,
        "fibers": fibers,
        "cocenter": cocenter,
        "hecke": hecke,
        "dcosets": dcosets,
    })
}
