//! Root data, affine roots, the length-zero subgroup Ω ≅ Λ/Q∨ and twists.
//!
//! Cocharacters are stored in *ambient coordinates*: the first `rank`
//! entries are coordinates with respect to the fundamental coweights
//! ω∨₁..ω∨ᵣ, the remaining `central_rank` entries span a central torus on
//! which every root vanishes. In these coordinates ⟨λ, αᵢ⟩ = λᵢ, roots are
//! integer vectors in simple-root coordinates and the pairing of a
//! cocharacter with `Σ mⱼαⱼ` is `Σ mⱼλⱼ`.

use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{AbelianQuotient, IMat, Lattice};
use crate::weyl::{ExtAffElt, FinWeylElt};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
    /// Rank-zero datum: a torus.
    T,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CartanType {
    pub family: Family,
    pub rank: usize,
}

impl FromStr for CartanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::RootDatum(format!("unknown Cartan type `{s}`"));
        if s == "T" || s == "T0" {
            return Ok(CartanType { family: Family::T, rank: 0 });
        }
        let mut chars = s.chars();
        let family = match chars.next().ok_or_else(bad)?.to_ascii_uppercase() {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            _ => return Err(bad()),
        };
        let rest = chars.as_str().trim_start_matches('_');
        let rank: usize = rest.parse().map_err(|_| bad())?;
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
            Family::T => false,
        };
        if !ok {
            return Err(bad());
        }
        Ok(CartanType { family, rank })
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::T => write!(f, "T"),
            fam => write!(f, "{:?}{}", fam, self.rank),
        }
    }
}

impl CartanType {
    /// Cartan matrix `A[i][j] = ⟨α∨ᵢ, αⱼ⟩` in Bourbaki numbering.
    pub fn cartan_matrix(&self) -> IMat {
        let n = self.rank;
        let mut a = IMat::identity(n);
        for i in 0..n {
            a.set(i, i, 2);
        }
        let mut link = |i: usize, j: usize, aij: i64, aji: i64| {
            a.set(i, j, aij);
            a.set(j, i, aji);
        };
        match self.family {
            Family::T => {}
            Family::A => (0..n.saturating_sub(1)).for_each(|i| link(i, i + 1, -1, -1)),
            Family::B => {
                (0..n - 2).for_each(|i| link(i, i + 1, -1, -1));
                link(n - 2, n - 1, -1, -2);
            }
            Family::C => {
                (0..n - 2).for_each(|i| link(i, i + 1, -1, -1));
                link(n - 2, n - 1, -2, -1);
            }
            Family::D => {
                (0..n - 2).for_each(|i| link(i, i + 1, -1, -1));
                link(n - 3, n - 1, -1, -1);
            }
            Family::E => {
                link(0, 2, -1, -1);
                link(1, 3, -1, -1);
                (2..n - 1).for_each(|i| link(i, i + 1, -1, -1));
            }
            Family::F => {
                link(0, 1, -1, -1);
                link(1, 2, -1, -2);
                link(2, 3, -1, -1);
            }
            Family::G => link(0, 1, -3, -1),
        }
        a
    }

    pub fn positive_root_count(&self) -> usize {
        let n = self.rank;
        match self.family {
            Family::T => 0,
            Family::A => n * (n + 1) / 2,
            Family::B | Family::C => n * n,
            Family::D => n * (n - 1),
            Family::E => [36, 63, 120][n - 6],
            Family::F => 24,
            Family::G => 6,
        }
    }

    pub fn weyl_order(&self) -> u64 {
        let n = self.rank as u64;
        let fact = |k: u64| (1..=k).product::<u64>();
        match self.family {
            Family::T => 1,
            Family::A => fact(n + 1),
            Family::B | Family::C => (1u64 << n) * fact(n),
            Family::D => (1u64 << (n - 1)) * fact(n),
            Family::E => [51_840, 2_903_040, 696_729_600][n as usize - 6],
            Family::F => 1152,
            Family::G => 12,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LatticeSpec {
    /// Λ = Q∨ (⊕ central part).
    SimplyConnected,
    /// Λ = P∨, the coweight lattice (⊕ central part).
    Adjoint,
    /// Basis rows in ambient coordinates.
    Explicit(Vec<Vec<i64>>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartanSpec {
    pub cartan_type: String,
    pub lattice: LatticeSpec,
    pub central_rank: usize,
}

impl CartanSpec {
    pub fn new(cartan_type: &str, lattice: LatticeSpec) -> Self {
        CartanSpec { cartan_type: cartan_type.to_string(), lattice, central_rank: 0 }
    }
}

/// A reduced root datum together with the derived tables everything else
/// reads from.
#[derive(Debug, Clone)]
pub struct RootDatum {
    pub cartan_type: CartanType,
    pub rank: usize,
    pub central_rank: usize,
    pub cartan: IMat,
    /// Positive roots in simple-root coordinates, sorted by height then
    /// lexicographically; simple roots come first.
    pub pos_roots: Vec<Vec<i64>>,
    /// Coroots of `pos_roots`, in ambient coordinates.
    pub pos_coroots: Vec<Vec<i64>>,
    /// Index of the highest root in `pos_roots` (absent for rank 0).
    pub highest: Option<usize>,
    /// Sum of the positive roots, in simple-root coordinates.
    pub two_rho: Vec<i64>,
    pub lattice: Lattice,
    pub lattice_spec: LatticeSpec,
    pub omega: OmegaGroup,
    /// Simple affine reflections s₀..sᵣ.
    pub generators: Vec<ExtAffElt>,
}

/// Affine root `(α, k)`: the affine function `x ↦ ⟨x, α⟩ + k`. `root` indexes
/// `RootDatum::roots()` (positive roots first, then their negatives).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AffineRoot {
    pub root: usize,
    pub level: i64,
}

impl AffineRoot {
    pub fn is_positive(&self, rd: &RootDatum) -> bool {
        self.level > 0 || (self.level == 0 && self.root < rd.pos_roots.len())
    }
}

pub fn build_root_datum(spec: &CartanSpec) -> Result<RootDatum> {
    let cartan_type: CartanType = spec.cartan_type.parse()?;
    let rank = cartan_type.rank;
    let dim = rank + spec.central_rank;
    let cartan = cartan_type.cartan_matrix();

    let (pos_roots, pos_coroots) = generate_roots(&cartan, dim)?;
    if pos_roots.len() != cartan_type.positive_root_count() {
        return Err(Error::RootDatum(format!(
            "inconsistent root list: generated {} positive roots for {}",
            pos_roots.len(),
            cartan_type
        )));
    }
    for a in &pos_roots {
        for b in &pos_roots {
            if b.iter().zip(a).all(|(x, y)| *x == 2 * y) {
                return Err(Error::RootDatum("root system is not reduced".into()));
            }
        }
    }
    for (i, (r, c)) in pos_roots.iter().zip(&pos_coroots).enumerate() {
        if pair(c, r) != 2 {
            return Err(Error::RootDatum(format!("⟨α∨, α⟩ ≠ 2 for positive root #{i}")));
        }
    }
    let highest = if rank == 0 {
        None
    } else {
        let h = pos_roots.iter().map(|r| r.iter().sum::<i64>()).max().unwrap();
        let idx: Vec<usize> =
            (0..pos_roots.len()).filter(|&i| pos_roots[i].iter().sum::<i64>() == h).collect();
        if idx.len() != 1 {
            return Err(Error::RootDatum("no unique highest root".into()));
        }
        Some(idx[0])
    };
    let mut two_rho = vec![0; rank];
    for r in &pos_roots {
        for (t, x) in two_rho.iter_mut().zip(r) {
            *t += x;
        }
    }

    let coroot_rows: Vec<Vec<i64>> = (0..rank).map(|i| coroot_ambient(&cartan, i, dim)).collect();
    let central_rows: Vec<Vec<i64>> = (rank..dim)
        .map(|k| {
            let mut v = vec![0; dim];
            v[k] = 1;
            v
        })
        .collect();
    let basis_rows: Vec<Vec<i64>> = match &spec.lattice {
        LatticeSpec::SimplyConnected => coroot_rows.iter().chain(&central_rows).cloned().collect(),
        LatticeSpec::Adjoint => (0..dim)
            .map(|k| {
                let mut v = vec![0; dim];
                v[k] = 1;
                v
            })
            .collect(),
        LatticeSpec::Explicit(rows) => {
            if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
                return Err(Error::RootDatum(format!(
                    "explicit lattice must be a {dim}×{dim} integer matrix"
                )));
            }
            rows.clone()
        }
    };
    let lattice = Lattice::new(IMat::from_rows(&basis_rows, dim))
        .ok_or_else(|| Error::RootDatum("lattice basis is singular".into()))?;
    if coroot_rows.iter().any(|c| !lattice.contains(c)) {
        return Err(Error::LatticeMissingCoroots);
    }

    let quotient = AbelianQuotient::new(&lattice, &coroot_rows).expect("coroots lie in Λ");
    let mut rd = RootDatum {
        cartan_type,
        rank,
        central_rank: spec.central_rank,
        cartan,
        pos_roots,
        pos_coroots,
        highest,
        two_rho,
        lattice,
        lattice_spec: spec.lattice.clone(),
        omega: OmegaGroup { quotient },
        generators: Vec::new(),
    };
    rd.generators = (0..rd.num_generators()).map(|i| rd.make_generator(i)).collect();
    Ok(rd)
}

fn coroot_ambient(cartan: &IMat, i: usize, dim: usize) -> Vec<i64> {
    let mut v = vec![0; dim];
    v[..cartan.cols].copy_from_slice(cartan.row(i));
    v
}

/// Positive roots and their coroots by closing the simple roots under simple
/// reflections.
fn generate_roots(cartan: &IMat, dim: usize) -> Result<(Vec<Vec<i64>>, Vec<Vec<i64>>)> {
    let n = cartan.rows;
    let mut roots: Vec<Vec<i64>> = Vec::new();
    let mut coroots: Vec<Vec<i64>> = Vec::new();
    for i in 0..n {
        let mut r = vec![0; n];
        r[i] = 1;
        roots.push(r);
        coroots.push(coroot_ambient(cartan, i, dim));
    }
    let mut k = 0;
    while k < roots.len() {
        for i in 0..n {
            let (r, c) = (roots[k].clone(), coroots[k].clone());
            let pairing: i64 = (0..n).map(|j| cartan.get(i, j) * r[j]).sum();
            let mut nr = r.clone();
            nr[i] -= pairing;
            if nr.iter().all(|&x| x == 0) || nr.iter().any(|&x| x < 0) {
                continue;
            }
            if roots.contains(&nr) {
                continue;
            }
            let ci = c[i];
            let nc: Vec<i64> =
                (0..dim).map(|j| c[j] - ci * if j < n { cartan.get(i, j) } else { 0 }).collect();
            roots.push(nr);
            coroots.push(nc);
        }
        k += 1;
        if roots.len() > 10_000 {
            return Err(Error::RootDatum("root generation did not terminate".into()));
        }
    }
    let mut paired: Vec<(Vec<i64>, Vec<i64>)> = roots.into_iter().zip(coroots).collect();
    paired.sort_by(|a, b| {
        let ha: i64 = a.0.iter().sum();
        let hb: i64 = b.0.iter().sum();
        ha.cmp(&hb).then_with(|| b.0.cmp(&a.0))
    });
    Ok(paired.into_iter().unzip())
}

/// ⟨λ, β⟩ for λ in ambient coordinates and β in simple-root coordinates.
#[inline]
pub fn pair(lambda: &[i64], root: &[i64]) -> i64 {
    root.iter().zip(lambda).map(|(m, l)| m * l).sum()
}

pub fn pair_q(v: &[Rational64], root: &[i64]) -> Rational64 {
    root.iter().zip(v).map(|(m, x)| *x * *m).sum()
}

impl RootDatum {
    /// Dimension of ambient coordinates (`rank + central_rank`).
    pub fn dim(&self) -> usize {
        self.rank + self.central_rank
    }

    /// Number of simple affine reflections s₀..sᵣ (zero for a torus).
    pub fn num_generators(&self) -> usize {
        if self.rank == 0 {
            0
        } else {
            self.rank + 1
        }
    }

    pub fn num_pos_roots(&self) -> usize {
        self.pos_roots.len()
    }

    /// All roots: positive ones, then their negatives in the same order.
    pub fn roots(&self) -> Vec<Vec<i64>> {
        let neg = self.pos_roots.iter().map(|r| r.iter().map(|x| -x).collect());
        self.pos_roots.iter().cloned().chain(neg).collect()
    }

    pub fn coroots(&self) -> Vec<Vec<i64>> {
        let neg = self.pos_coroots.iter().map(|r| r.iter().map(|x| -x).collect());
        self.pos_coroots.iter().cloned().chain(neg).collect()
    }

    pub fn highest_root(&self) -> Option<&[i64]> {
        self.highest.map(|h| self.pos_roots[h].as_slice())
    }

    pub fn highest_coroot(&self) -> Option<&[i64]> {
        self.highest.map(|h| self.pos_coroots[h].as_slice())
    }

    /// Simple coroot α∨ᵢ in ambient coordinates.
    pub fn simple_coroot(&self, i: usize) -> Vec<i64> {
        coroot_ambient(&self.cartan, i, self.dim())
    }

    /// ⟨ν, 2ρ⟩.
    pub fn pair_two_rho(&self, v: &[Rational64]) -> Rational64 {
        pair_q(v, &self.two_rho)
    }

    pub fn is_dominant(&self, v: &[Rational64]) -> bool {
        v[..self.rank].iter().all(|x| !x.is_negative())
    }

    /// Simple affine root of generator `i`: (αᵢ₋₁, 0) for i ≥ 1, (−θ, 1) for i = 0.
    pub fn simple_affine_root(&self, i: usize) -> AffineRoot {
        let np = self.num_pos_roots();
        if i == 0 {
            AffineRoot { root: np + self.highest.expect("rank-zero datum has no s0"), level: 1 }
        } else {
            AffineRoot { root: i - 1, level: 0 }
        }
    }

    /// Dominant representative of the W₀-orbit of `v` together with u ∈ W₀
    /// such that u(v) is that representative.
    pub fn dominant_rep(&self, v: &[Rational64]) -> (Vec<Rational64>, FinWeylElt) {
        let mut cur = v.to_vec();
        let mut word = Vec::new();
        while let Some(i) = (0..self.rank).find(|&i| cur[i].is_negative()) {
            let c = cur[i];
            for (j, x) in cur.iter_mut().enumerate().take(self.rank) {
                *x -= c * Rational64::from_integer(self.cartan.get(i, j));
            }
            word.push(i);
        }
        let mut u = FinWeylElt::identity(self.rank);
        for &i in &word {
            u = FinWeylElt::simple(self, i).compose(&u);
        }
        (cur, u)
    }

    pub fn lattice_contains(&self, v: &[i64]) -> bool {
        v.len() == self.dim() && self.lattice.contains(v)
    }

    /// Presentation of Ω ≅ Λ/Q∨.
    pub fn omega_group(&self) -> OmegaGroup {
        self.omega.clone()
    }
}

/// Ω ≅ Λ/Q∨ via Smith normal form. Classes are coordinate vectors
/// (torsion coordinates reduced, then free coordinates).
#[derive(Debug, Clone)]
pub struct OmegaGroup {
    pub quotient: AbelianQuotient,
}

impl OmegaGroup {
    pub fn project(&self, lambda: &[i64]) -> Vec<i64> {
        self.quotient.project(lambda).expect("translation lies in Λ")
    }

    pub fn is_trivial(&self) -> bool {
        self.quotient.ngens() == 0
    }
}

/// User-facing description of a twist: a permutation of the finite simple
/// roots and an optional length-zero element.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TwistSpec {
    pub diagram_perm: Option<Vec<usize>>,
    pub omega: Option<ExtAffElt>,
}

/// θ = Ad(τ₀) ∘ δ, with δ a diagram automorphism acting on coweight
/// coordinates by permutation and trivially on the central part.
#[derive(Debug, Clone)]
pub struct Twist {
    /// δ on finite simple roots: αᵢ ↦ α_{perm[i]}.
    pub perm: Vec<usize>,
    pub tau0: ExtAffElt,
    pub tau0_inv: ExtAffElt,
    /// θ on simple affine reflections: θ(sᵢ) = s_{gen_perm[i]}.
    pub gen_perm: Vec<usize>,
    /// Order of θ as an automorphism of W̃.
    pub order: usize,
    /// Presentation of the coinvariants Ω_θ = Λ / (Q∨ + (1 − δ)Λ).
    pub coinvariants: AbelianQuotient,
}

impl Twist {
    pub fn is_identity(&self) -> bool {
        self.order == 1
    }

    /// δ on an ambient vector.
    pub fn delta_vec<T: Copy>(&self, v: &[T]) -> Vec<T> {
        let mut out = v.to_vec();
        for (i, &p) in self.perm.iter().enumerate() {
            out[p] = v[i];
        }
        out
    }

    /// θ(w) = τ₀ δ(w) τ₀⁻¹.
    pub fn apply(&self, w: &ExtAffElt) -> ExtAffElt {
        let d = ExtAffElt {
            trans: self.delta_vec(&w.trans),
            fin: w.fin.conjugate_by_perm(&self.perm),
        };
        self.tau0.mul(&d).mul(&self.tau0_inv)
    }

    pub fn apply_vec_q(&self, v: &[Rational64]) -> Vec<Rational64> {
        let d = self.delta_vec(v);
        self.tau0.fin.apply_q(&d)
    }
}

/// Default depth of the ball on which length preservation is sampled.
pub const TWIST_CHECK_DEPTH: usize = 3;

pub fn build_twist(rd: &RootDatum, spec: &TwistSpec) -> Result<Twist> {
    build_twist_checked(rd, spec, TWIST_CHECK_DEPTH)
}

pub fn build_twist_checked(rd: &RootDatum, spec: &TwistSpec, depth: usize) -> Result<Twist> {
    let r = rd.rank;
    let perm = spec.diagram_perm.clone().unwrap_or_else(|| (0..r).collect());
    if perm.len() != r {
        return Err(Error::Twist(format!("diagram_perm must have {r} entries")));
    }
    let mut seen = vec![false; r];
    for &p in &perm {
        if p >= r || seen[p] {
            return Err(Error::Twist("diagram_perm is not a permutation".into()));
        }
        seen[p] = true;
    }
    for i in 0..r {
        for j in 0..r {
            if rd.cartan.get(perm[i], perm[j]) != rd.cartan.get(i, j) {
                return Err(Error::Twist(
                    "diagram_perm is not a diagram automorphism".into(),
                ));
            }
        }
    }
    let tau0 = spec.omega.clone().unwrap_or_else(|| ExtAffElt::identity(rd));
    if rd.length(&tau0) != 0 {
        return Err(Error::Twist("twist Ω part must have length zero".into()));
    }
    let tau0_inv = tau0.inv();

    let identity_perm: Vec<usize> = (0..rd.dim()).collect();
    let mut amb_perm = identity_perm.clone();
    amb_perm[..r].copy_from_slice(&perm);
    for row in 0..rd.dim() {
        let b = rd.lattice.basis.row(row);
        let mut img = b.to_vec();
        for (i, &p) in amb_perm.iter().enumerate() {
            img[p] = b[i];
        }
        if !rd.lattice.contains(&img) {
            return Err(Error::Twist("δ does not preserve Λ".into()));
        }
    }

    let mut twist = Twist {
        perm: perm.clone(),
        tau0,
        tau0_inv,
        gen_perm: Vec::new(),
        order: 1,
        coinvariants: rd.omega_group().quotient,
    };

    let gens: Vec<ExtAffElt> = (0..rd.num_generators()).map(|i| rd.generator(i)).collect();
    for g in &gens {
        let img = twist.apply(g);
        match gens.iter().position(|h| *h == img) {
            Some(j) => twist.gen_perm.push(j),
            None => {
                return Err(Error::Twist(
                    "induced map does not send simple affine reflections to simple affine reflections"
                        .into(),
                ))
            }
        }
    }

    // order on W̃: generators and lattice translations
    let mut probes: Vec<ExtAffElt> = gens.clone();
    for row in 0..rd.dim() {
        probes.push(ExtAffElt::translation(rd, rd.lattice.basis.row(row).to_vec()));
    }
    let mut cur = probes.clone();
    let mut order = 0;
    for k in 1..=1000 {
        cur = cur.iter().map(|w| twist.apply(w)).collect();
        if cur == probes {
            order = k;
            break;
        }
    }
    if order == 0 {
        return Err(Error::Twist("twist is not of finite order".into()));
    }
    twist.order = order;

    for w in rd.ball_all(depth) {
        if rd.length(&twist.apply(&w)) != rd.length(&w) {
            return Err(Error::Twist("induced map fails length preservation".into()));
        }
    }

    let mut gens: Vec<Vec<i64>> = (0..r).map(|i| rd.simple_coroot(i)).collect();
    for row in 0..rd.dim() {
        let b = rd.lattice.basis.row(row);
        let d = twist.delta_vec(b);
        gens.push(b.iter().zip(&d).map(|(x, y)| x - y).collect());
    }
    twist.coinvariants = AbelianQuotient::new(&rd.lattice, &gens).expect("generators lie in Λ");
    Ok(twist)
}

/// Zero rational vector of the ambient dimension.
pub fn zero_q(dim: usize) -> Vec<Rational64> {
    vec![Rational64::zero(); dim]
}
