//! The Iwahori–Hecke algebra of W̃ over ℤ[q] and reduction in its
//! θ-twisted cocenter.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};

use crate::newton::{NewtonPair, PivotOrder};
use crate::poly::ParamPoly;
use crate::root_datum::RootDatum;
use crate::setting::Setting;
use crate::weyl::{ExtAffElt, ShortLexKey};

/// Finitely supported combination Σ c_w T_w.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct HeckeElt {
    pub terms: BTreeMap<ExtAffElt, ParamPoly>,
}

impl HeckeElt {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(w: ExtAffElt) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(w, ParamPoly::one());
        HeckeElt { terms }
    }

    pub fn add_term(&mut self, w: ExtAffElt, c: &ParamPoly) {
        add_into(&mut self.terms, w, c);
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

fn add_into<K: Ord>(map: &mut BTreeMap<K, ParamPoly>, k: K, c: &ParamPoly) {
    if c.is_zero() {
        return;
    }
    match map.entry(k) {
        Entry::Vacant(v) => {
            v.insert(c.clone());
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

/// Image of a Hecke element in the cocenter: class labels → coefficients.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CocenterVector {
    pub terms: BTreeMap<ExtAffElt, ParamPoly>,
}

impl CocenterVector {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &CocenterVector) -> CocenterVector {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            add_into(&mut out.terms, k.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &CocenterVector) -> CocenterVector {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            add_into(&mut out.terms, k.clone(), &-c);
        }
        out
    }

    /// Terms ordered ShortLex by label.
    pub fn sorted_terms<'a>(&'a self, rd: &RootDatum) -> Vec<(&'a ExtAffElt, &'a ParamPoly)> {
        let mut v: Vec<(ShortLexKey, (&ExtAffElt, &ParamPoly))> =
            self.terms.iter().map(|(k, c)| (rd.shortlex_key(k), (k, c))).collect();
        v.sort_by(|a, b| a.0.cmp(&b.0));
        v.into_iter().map(|(_, t)| t).collect()
    }
}

/// Outcome of comparing the reductions of T_x·T_y and T_y·T_θ(x).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceCheck {
    pub agree: bool,
    pub discrepancy: CocenterVector,
}

impl RootDatum {
    /// f · T_s for a simple affine reflection s.
    fn mul_simple_right(&self, f: &HeckeElt, s: usize) -> HeckeElt {
        let mut out = HeckeElt::zero();
        let g = &self.generators[s];
        for (w, c) in &f.terms {
            let ws = w.mul(g);
            if self.is_right_descent(w, s) {
                out.add_term(w.clone(), &(c * &ParamPoly::q_minus_one()));
                out.add_term(ws, &(c * &ParamPoly::q()));
            } else {
                out.add_term(ws, c);
            }
        }
        out
    }

    /// f · T_w, factoring T_w along its normal form.
    pub fn hecke_mul_basis(&self, f: &HeckeElt, w: &ExtAffElt) -> HeckeElt {
        let nf = self.reduced_word(w);
        let mut cur = f.clone();
        for &s in &nf.word {
            cur = self.mul_simple_right(&cur, s);
        }
        if !nf.omega.is_identity() {
            cur = HeckeElt { terms: cur.terms.into_iter().map(|(x, c)| (x.mul(&nf.omega), c)).collect() };
        }
        cur
    }

    pub fn hecke_mul(&self, f: &HeckeElt, g: &HeckeElt) -> HeckeElt {
        let mut out = HeckeElt::zero();
        for (w, c) in &g.terms {
            let part = self.hecke_mul_basis(f, w);
            for (x, d) in &part.terms {
                out.add_term(x.clone(), &(d * c));
            }
        }
        out
    }
}

impl Setting {
    pub fn cocenter_reduce(&self, f: &HeckeElt) -> CocenterVector {
        self.cocenter_reduce_with(f, PivotOrder::Default)
    }

    /// Rewrites f in the cocenter until every term is of minimal length,
    /// always treating a longest remaining term first. With w ≈ w′ and
    /// ℓ(s·w′·θ(s)) < ℓ(w′): T_w ≡ T_w′ ≡ (q−1)·T_{s·w′} + q·T_{s·w′·θ(s)}.
    pub fn cocenter_reduce_with(&self, f: &HeckeElt, order: PivotOrder) -> CocenterVector {
        let mut work: BTreeMap<(usize, ShortLexKey), (ExtAffElt, ParamPoly)> = BTreeMap::new();
        let push = |work: &mut BTreeMap<(usize, ShortLexKey), (ExtAffElt, ParamPoly)>, w: ExtAffElt, c: ParamPoly| {
            let key = (self.length(&w), self.datum.shortlex_key(&w));
            let e = work.entry(key).or_insert_with(|| (w, ParamPoly::zero()));
            e.1 += &c;
        };
        for (w, c) in &f.terms {
            push(&mut work, w.clone(), c.clone());
        }
        let mut out = CocenterVector::default();
        let mut descents: HashMap<ExtAffElt, Option<(ExtAffElt, usize)>> = HashMap::new();
        loop {
            let next = match order {
                PivotOrder::Default => work.pop_last(),
                PivotOrder::Reversed => {
                    let top = work.keys().next_back().map(|k| k.0);
                    match top {
                        None => None,
                        Some(l) => {
                            let k = work.keys().find(|k| k.0 == l).cloned().expect("key present");
                            work.remove_entry(&k)
                        }
                    }
                }
            };
            let Some((_, (w, c))) = next else { break };
            if c.is_zero() {
                continue;
            }
            let d = descents
                .entry(w.clone())
                .or_insert_with(|| {
                    self.find_descent(&w, order).map(|(path, s)| {
                        let wp = path.last().map(|st| st.to.clone()).unwrap_or_else(|| w.clone());
                        (wp, s)
                    })
                })
                .clone();
            match d {
                None => add_into(&mut out.terms, self.class_label(&w), &c),
                Some((wp, s)) => {
                    let sw = self.datum.generators[s].mul(&wp);
                    let sws = self.simple_move(s, &wp);
                    push(&mut work, sw, &c * &ParamPoly::q_minus_one());
                    push(&mut work, sws, &c * &ParamPoly::q());
                }
            }
        }
        out
    }

    /// Splits a cocenter vector by the Newton pair of its labels.
    pub fn newton_grade(&self, cv: &CocenterVector) -> BTreeMap<NewtonPair, CocenterVector> {
        let mut out: BTreeMap<NewtonPair, CocenterVector> = BTreeMap::new();
        for (k, c) in &cv.terms {
            let comp = out.entry(self.pi(k)).or_default();
            add_into(&mut comp.terms, k.clone(), c);
        }
        out
    }

    /// Compares the reductions of T_x·T_y and T_y·T_θ(x).
    pub fn trace_check(&self, x: &ExtAffElt, y: &ExtAffElt) -> TraceCheck {
        let rd = &self.datum;
        let lhs = rd.hecke_mul_basis(&HeckeElt::basis(x.clone()), y);
        let rhs = rd.hecke_mul_basis(&HeckeElt::basis(y.clone()), &self.theta(x));
        let discrepancy = self.cocenter_reduce(&lhs).sub(&self.cocenter_reduce(&rhs));
        TraceCheck { agree: discrepancy.is_zero(), discrepancy }
    }

    /// Lines `(coeff) * [label]`, labels in ShortLex order; `0` when empty.
    pub fn format_cocenter(&self, cv: &CocenterVector) -> String {
        if cv.is_zero() {
            return "0".to_string();
        }
        cv.sorted_terms(&self.datum)
            .into_iter()
            .map(|(k, c)| format!("({c}) * [{}]", self.format_element(k)))
            .collect::<Vec<_>>()
            .join("\n")
    }

    /// Inverse of `format_cocenter`.
    pub fn parse_cocenter(&self, s: &str) -> crate::Result<CocenterVector> {
        let mut cv = CocenterVector::default();
        if s.trim() == "0" {
            return Ok(cv);
        }
        for line in s.lines().filter(|l| !l.trim().is_empty()) {
            let bad = || crate::Error::Hecke(format!("cannot parse cocenter line `{line}`"));
            let (c, rest) = line.split_once(") * [").ok_or_else(bad)?;
            let c = c.trim().strip_prefix('(').ok_or_else(bad)?;
            let label = rest.trim_end().strip_suffix(']').ok_or_else(bad)?;
            let poly: ParamPoly = c.parse()?;
            add_into(&mut cv.terms, self.parse_element(label)?, &poly);
        }
        Ok(cv)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_datum::{build_root_datum, CartanSpec, LatticeSpec};

    fn a1() -> Setting {
        let rd = build_root_datum(&CartanSpec::new("A1", LatticeSpec::SimplyConnected)).unwrap();
        Setting::build(rd, &[], None, None, None).unwrap()
    }

    fn t(st: &Setting, s: &str) -> HeckeElt {
        HeckeElt::basis(st.parse_element(s).unwrap())
    }

    #[test]
    fn quadratic_relation() {
        let st = a1();
        let p = st.datum.hecke_mul(&t(&st, "s0"), &t(&st, "s0"));
        let mut want = HeckeElt::zero();
        want.add_term(st.parse_element("s0").unwrap(), &ParamPoly::q_minus_one());
        want.add_term(st.parse_element("").unwrap(), &ParamPoly::q());
        assert_eq!(p, want);
        assert_eq!(st.datum.hecke_mul(&t(&st, "s0"), &t(&st, "s1")), t(&st, "s0 s1"));
        assert_eq!(st.datum.hecke_mul(&t(&st, ""), &t(&st, "s1 s0")), t(&st, "s1 s0"));
    }

    #[test]
    fn cocenter_examples() {
        let st = a1();
        let cv = st.cocenter_reduce(&t(&st, "s0 s1 s0"));
        assert_eq!(st.format_cocenter(&cv), "(q) * [s1]\n(-1 + q) * [s0 s1]");
        let cv = st.cocenter_reduce(&t(&st, "s1 s0 s1"));
        assert_eq!(st.format_cocenter(&cv), "(q) * [s0]\n(-1 + q) * [s0 s1]");
        assert_eq!(st.parse_cocenter(&st.format_cocenter(&cv)).unwrap(), cv);
        let cv = st.cocenter_reduce(&t(&st, "s1"));
        assert_eq!(st.format_cocenter(&cv), "(1) * [s1]");
    }

    #[test]
    fn grading() {
        let st = a1();
        let cv = st.cocenter_reduce(&t(&st, "s0 s1 s0"));
        let g = st.newton_grade(&cv);
        assert_eq!(g.len(), 2);
        let total = g.values().fold(CocenterVector::default(), |a, b| a.add(b));
        assert_eq!(total, cv);
        assert!(st.newton_grade(&CocenterVector::default()).is_empty());
    }

    #[test]
    fn trace_examples() {
        let st = a1();
        let x = st.parse_element("s0").unwrap();
        let y = st.parse_element("s1").unwrap();
        assert!(st.trace_check(&x, &y).agree);
        assert!(st.trace_check(&st.identity(), &y).agree);
    }
}
