//! Levi subsystems of Newton points, standard pairs, the rigid cover of
//! minimal elements and minimal double coset representatives.

use std::collections::{BTreeSet, HashSet};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::newton::NewtonPair;
use crate::root_datum::pair_q;
use crate::setting::Setting;
use crate::weyl::ExtAffElt;

/// Roots orthogonal to a Newton point, as indices into `RootDatum::roots()`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeviDescriptor {
    pub roots: Vec<usize>,
    pub full: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StandardPair {
    pub k: Vec<usize>,
    pub tau: ExtAffElt,
}

impl Setting {
    pub fn levi(&self, nu: &NewtonPair) -> LeviDescriptor {
        let all = self.datum.roots();
        let roots: Vec<usize> =
            (0..all.len()).filter(|&i| pair_q(&nu.nu_bar, &all[i]).is_zero()).collect();
        let full = roots.len() == all.len();
        LeviDescriptor { roots, full }
    }

    pub fn is_rigid(&self, nu: &NewtonPair) -> bool {
        self.levi(nu).full
    }

    /// Image of generator i under Ad(τ)∘θ, if it is a generator.
    fn ad_theta_image(&self, tau: &ExtAffElt, i: usize) -> Option<usize> {
        let gens = &self.datum.generators;
        let img = tau.mul(&gens[self.twist.gen_perm[i]]).mul(&tau.inv());
        gens.iter().position(|g| *g == img)
    }

    /// All (K, τ) with τ from `tau_list`, W_K finite and Ad(τ)θ(K) = K.
    pub fn standard_pairs(&self, tau_list: &[ExtAffElt]) -> Result<Vec<StandardPair>> {
        let subsets = self.finite_subsets();
        let mut out = Vec::new();
        for tau in tau_list {
            if self.length(tau) != 0 {
                return Err(Error::Rigid(format!("`{}` has positive length", self.format_element(tau))));
            }
            for k in &subsets {
                if self.ad_theta_stable(tau, k) {
                    out.push(StandardPair { k: k.clone(), tau: tau.clone() });
                }
            }
        }
        Ok(out)
    }

    /// The standard pair (K, τ) with w ∈ W_K·τ, for minimal w with central
    /// Newton point.
    pub fn rigid_cover(&self, w: &ExtAffElt) -> Result<StandardPair> {
        if !self.is_minimal(w) {
            return Err(Error::Rigid(format!("`{}` is not of minimal length", self.format_element(w))));
        }
        if !self.is_rigid(&self.pi(w)) {
            return Err(Error::Rigid(format!("`{}` has a non-central Newton point", self.format_element(w))));
        }
        let nf = self.datum.reduced_word(w);
        let tau = nf.omega;
        let mut k: BTreeSet<usize> = nf.word.iter().copied().collect();
        let mut frontier: Vec<usize> = k.iter().copied().collect();
        while let Some(i) = frontier.pop() {
            let j = self
                .ad_theta_image(&tau, i)
                .ok_or_else(|| Error::Rigid("Ad(τ)θ does not permute the simple reflections".into()))?;
            if k.insert(j) {
                frontier.push(j);
            }
        }
        let k: Vec<usize> = k.into_iter().collect();
        if !self.datum.is_finite_type(&k) {
            return Err(Error::Rigid(format!(
                "support closure {k:?} of `{}` generates an infinite group",
                self.format_element(w)
            )));
        }
        if !self.ad_theta_stable(&tau, &k) {
            return Err(Error::Rigid("support closure is not Ad(τ)θ-stable".into()));
        }
        Ok(StandardPair { k, tau })
    }

    /// All w ∈ W_K with w·τ of minimal length among x·w·τ·θ(x)⁻¹, x ∈ W_K.
    pub fn wk_min(&self, k: &[usize], tau: &ExtAffElt) -> Result<Vec<ExtAffElt>> {
        if self.length(tau) != 0 || !self.datum.is_finite_type(k) || !self.ad_theta_stable(tau, k) {
            return Err(Error::Rigid(format!("({k:?}, `{}`) is not a standard pair", self.format_element(tau))));
        }
        let wk = self.datum.parabolic_elements(k);
        let mut out = Vec::new();
        for w in &wk {
            let wt = w.mul(tau);
            let len = self.length(&wt);
            let min = wk.iter().map(|x| self.length(&self.twisted_conj(x, &wt))).min().unwrap_or(len);
            if len == min {
                out.push(w.clone());
            }
        }
        Ok(out)
    }

    /// Elements of length ≤ bound in the W_a-cosets of `tau_list` with no
    /// left descent in K and no right descent in K′, ShortLex ordered.
    pub fn double_coset_reps(&self, k: &[usize], k2: &[usize], bound: i64, tau_list: &[ExtAffElt]) -> Result<Vec<ExtAffElt>> {
        if bound < 0 {
            return Err(Error::Rigid("bound must be non-negative".into()));
        }
        if !self.datum.is_finite_type(k) || !self.datum.is_finite_type(k2) {
            return Err(Error::Rigid("W_K must be finite".into()));
        }
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for tau in tau_list {
            for x in self.datum.enumerate_coset_ball(tau, bound)? {
                let ok = k.iter().all(|&i| !self.datum.is_left_descent(&x, i))
                    && k2.iter().all(|&i| !self.datum.is_right_descent(&x, i));
                if ok && seen.insert(x.clone()) {
                    out.push(x);
                }
            }
        }
        self.datum.sort_shortlex(&mut out);
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_datum::{build_root_datum, CartanSpec, LatticeSpec};

    fn setting(l: LatticeSpec, labels: &[(&str, Vec<i64>)]) -> Setting {
        let rd = build_root_datum(&CartanSpec::new("A1", l)).unwrap();
        let labels: Vec<(String, Vec<i64>)> = labels.iter().map(|(n, v)| (n.to_string(), v.clone())).collect();
        Setting::build(rd, &labels, None, None, None).unwrap()
    }

    fn el(st: &Setting, s: &str) -> ExtAffElt {
        st.parse_element(s).unwrap()
    }

    #[test]
    fn levi_examples() {
        let st = setting(LatticeSpec::SimplyConnected, &[]);
        assert!(st.is_rigid(&st.pi(&el(&st, "s0"))));
        let l = st.levi(&st.pi(&el(&st, "s0 s1")));
        assert!(l.roots.is_empty() && !l.full);
    }

    #[test]
    fn pairs_examples() {
        let st = setting(LatticeSpec::SimplyConnected, &[]);
        let p = st.standard_pairs(&[st.identity()]).unwrap();
        let ks: Vec<Vec<usize>> = p.iter().map(|p| p.k.clone()).collect();
        assert_eq!(ks, vec![vec![], vec![0], vec![1]]);
        assert!(st.standard_pairs(&[]).unwrap().is_empty());
        assert!(st.standard_pairs(&[el(&st, "s0")]).is_err());

        let st = setting(LatticeSpec::Adjoint, &[("p", vec![1])]);
        let p = st.standard_pairs(&[st.identity(), el(&st, "p")]).unwrap();
        assert_eq!(p.len(), 4);
        assert_eq!(p[3], StandardPair { k: vec![], tau: el(&st, "p") });
    }

    #[test]
    fn cover_examples() {
        let st = setting(LatticeSpec::SimplyConnected, &[]);
        assert_eq!(st.rigid_cover(&st.identity()).unwrap(), StandardPair { k: vec![], tau: st.identity() });
        assert_eq!(st.rigid_cover(&el(&st, "s0")).unwrap(), StandardPair { k: vec![0], tau: st.identity() });
        assert!(st.rigid_cover(&el(&st, "s0 s1")).is_err());
        let st = setting(LatticeSpec::Adjoint, &[("p", vec![1])]);
        assert_eq!(st.rigid_cover(&el(&st, "p")).unwrap(), StandardPair { k: vec![], tau: el(&st, "p") });
    }

    #[test]
    fn wk_min_examples() {
        let st = setting(LatticeSpec::SimplyConnected, &[]);
        assert_eq!(st.wk_min(&[], &st.identity()).unwrap(), vec![st.identity()]);
        assert_eq!(st.wk_min(&[0], &st.identity()).unwrap(), vec![st.identity(), el(&st, "s0")]);
    }

    #[test]
    fn dcoset_examples() {
        let st = setting(LatticeSpec::SimplyConnected, &[]);
        let e = [st.identity()];
        assert_eq!(st.double_coset_reps(&[], &[], 1, &e).unwrap().len(), 3);
        assert_eq!(st.double_coset_reps(&[0], &[1], 2, &e).unwrap(), vec![st.identity(), el(&st, "s1 s0")]);
        assert_eq!(st.double_coset_reps(&[0], &[0], 2, &e).unwrap(), vec![st.identity(), el(&st, "s1")]);
        assert!(st.double_coset_reps(&[], &[], -1, &e).is_err());
    }
}
