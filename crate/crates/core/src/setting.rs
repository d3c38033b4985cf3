//! A root datum together with a twist and declared Ω labels: the context in
//! which every class-level computation runs. Also owns the element token
//! syntax (parsing and printing of normal forms).

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::root_datum::{build_twist_checked, RootDatum, Twist, TwistSpec, TWIST_CHECK_DEPTH};
use crate::weyl::{ExtAffElt, Generator};

/// Cap on the length of the extra conjugators used to join minimal length
/// elements of one class (see `Setting::min_closure`).
pub const MAX_CONJ_DEPTH: usize = 6;

#[derive(Debug)]
pub struct Setting {
    pub datum: RootDatum,
    pub twist: Twist,
    /// Declared Ω labels, in declaration order (label, length-zero element).
    pub labels: Vec<(String, ExtAffElt)>,
    /// Twisted Ω moves: pairs (τ, θ(τ)⁻¹) for Ω generators and their inverses.
    pub(crate) omega_moves: Vec<(ExtAffElt, ExtAffElt)>,
    conj_depth: usize,
    conj_moves: OnceLock<Vec<(ExtAffElt, ExtAffElt)>>,
    nmax: usize,
    pub(crate) label_cache: Mutex<HashMap<ExtAffElt, ExtAffElt>>,
    pub(crate) minimal_cache: Mutex<HashMap<ExtAffElt, bool>>,
}

impl Setting {
    pub fn new(datum: RootDatum, twist: Twist, labels: Vec<(String, ExtAffElt)>) -> Self {
        let nmax = datum.n_max();
        let mut omega_moves = Vec::new();
        for i in 0..datum.omega.quotient.ngens() {
            let g = datum.omega.quotient.generator(i);
            for c in [g.clone(), datum.omega.quotient.neg(&g)] {
                let tau = datum.omega_rep(&c);
                if tau.is_identity() || omega_moves.iter().any(|(t, _)| *t == tau) {
                    continue;
                }
                let inv = twist.apply(&tau).inv();
                omega_moves.push((tau, inv));
            }
        }
        Setting {
            datum,
            twist,
            labels,
            omega_moves,
            conj_depth: nmax.min(MAX_CONJ_DEPTH),
            conj_moves: OnceLock::new(),
            nmax,
            label_cache: Mutex::new(HashMap::new()),
            minimal_cache: Mutex::new(HashMap::new()),
        }
    }

    /// Builds a setting from a datum, raw Ω labels (label → Λ-vector) and a
    /// twist whose Ω part is given as an element token.
    pub fn build(
        datum: RootDatum,
        raw_labels: &[(String, Vec<i64>)],
        diagram_perm: Option<Vec<usize>>,
        omega_token: Option<&str>,
        twist_check_depth: Option<usize>,
    ) -> Result<Self> {
        let mut labels: Vec<(String, ExtAffElt)> = Vec::new();
        for (name, lambda) in raw_labels {
            validate_label(name)?;
            if labels.iter().any(|(n, _)| n == name) {
                return Err(Error::Config(format!("duplicate Ω label `{name}`")));
            }
            if !datum.lattice_contains(lambda) {
                return Err(Error::Config(format!("Ω label `{name}`: vector {lambda:?} is not in Λ")));
            }
            let tau = datum.omega_rep(&datum.omega.project(lambda));
            labels.push((name.clone(), tau));
        }
        let omega = match omega_token {
            None => None,
            Some(tok) => Some(parse_tokens(&datum, &labels, tok)?),
        };
        let spec = TwistSpec { diagram_perm, omega };
        let twist = build_twist_checked(&datum, &spec, twist_check_depth.unwrap_or(TWIST_CHECK_DEPTH))?;
        Ok(Setting::new(datum, twist, labels))
    }

    /// Overrides the depth of the extra conjugators used by `min_closure`.
    pub fn with_conj_depth(mut self, depth: usize) -> Self {
        self.conj_depth = depth;
        self.conj_moves = OnceLock::new();
        self.label_cache = Mutex::new(HashMap::new());
        self
    }

    pub fn conj_depth(&self) -> usize {
        self.conj_depth
    }

    pub fn nmax(&self) -> usize {
        self.nmax
    }

    /// Pairs (x, θ(x)⁻¹) for x ∈ W_a with 1 ≤ ℓ(x) ≤ conj_depth.
    pub(crate) fn conj_moves(&self) -> &[(ExtAffElt, ExtAffElt)] {
        self.conj_moves.get_or_init(|| {
            self.datum
                .ball_all(self.conj_depth)
                .into_iter()
                .filter(|x| !x.is_identity())
                .map(|x| {
                    let inv = self.twist.apply(&x).inv();
                    (x, inv)
                })
                .collect()
        })
    }

    pub fn theta(&self, w: &ExtAffElt) -> ExtAffElt {
        self.twist.apply(w)
    }

    /// x · w · θ(x)⁻¹.
    pub fn twisted_conj(&self, x: &ExtAffElt, w: &ExtAffElt) -> ExtAffElt {
        x.mul(w).mul(&self.theta(x).inv())
    }

    /// sᵢ · w · θ(sᵢ).
    pub fn simple_move(&self, i: usize, w: &ExtAffElt) -> ExtAffElt {
        let rd = &self.datum;
        rd.generators[i].mul(w).mul(&rd.generators[self.twist.gen_perm[i]])
    }

    pub fn identity(&self) -> ExtAffElt {
        ExtAffElt::identity(&self.datum)
    }

    pub fn length(&self, w: &ExtAffElt) -> usize {
        self.datum.length(w)
    }

    pub fn parse_element(&self, s: &str) -> Result<ExtAffElt> {
        parse_tokens(&self.datum, &self.labels, s)
    }

    pub fn parse_generators(&self, s: &str) -> Result<Vec<Generator>> {
        parse_generators(&self.datum, &self.labels, s)
    }

    /// Label of a length-zero element: a declared label, or `o[μ]` with μ
    /// its translation part.
    pub fn omega_token(&self, tau: &ExtAffElt) -> String {
        if let Some((n, _)) = self.labels.iter().find(|(_, t)| t == tau) {
            return n.clone();
        }
        format!("o[{}]", join_ints(&tau.trans))
    }

    /// Serialized normal form: the reduced word followed by the Ω part, so
    /// that the string parses back to the same element; the identity is `e`.
    pub fn format_element(&self, w: &ExtAffElt) -> String {
        let nf = self.datum.reduced_word(w);
        let mut toks: Vec<String> = nf.word.iter().map(|i| format!("s{i}")).collect();
        if !nf.omega.is_identity() {
            toks.push(self.omega_token(&nf.omega));
        }
        if toks.is_empty() {
            "e".to_string()
        } else {
            toks.join(" ")
        }
    }
}

pub fn join_ints(v: &[i64]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn validate_label(name: &str) -> Result<()> {
    let mut chars = name.chars();
    let ok_start = chars.next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_');
    let ok_rest = chars.all(|c| c.is_ascii_alphanumeric() || c == '_');
    let is_gen = name.len() > 1 && name.starts_with('s') && name[1..].chars().all(|c| c.is_ascii_digit());
    if !ok_start || !ok_rest || is_gen || name == "e" {
        return Err(Error::Config(format!("invalid Ω label `{name}`")));
    }
    Ok(())
}

/// Splits on whitespace, keeping bracketed groups together.
fn tokenize(s: &str) -> Result<Vec<String>> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut depth = 0usize;
    for c in s.chars() {
        match c {
            '[' => {
                depth += 1;
                cur.push(c);
            }
            ']' => {
                if depth == 0 {
                    return Err(Error::UnknownToken(format!("{cur}]")));
                }
                depth -= 1;
                cur.push(c);
            }
            c if c.is_whitespace() && depth == 0 => {
                if !cur.is_empty() {
                    out.push(std::mem::take(&mut cur));
                }
            }
            c if c.is_whitespace() => {}
            _ => cur.push(c),
        }
    }
    if depth != 0 {
        return Err(Error::UnknownToken(cur));
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    Ok(out)
}

fn parse_vector(tok: &str, inner: &str, dim: usize) -> Result<Vec<i64>> {
    let v: Vec<i64> = if inner.trim().is_empty() {
        Vec::new()
    } else {
        inner
            .split(',')
            .map(|x| x.trim().parse::<i64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::UnknownToken(tok.to_string()))?
    };
    if v.len() != dim {
        return Err(Error::UnknownToken(tok.to_string()));
    }
    Ok(v)
}

pub fn parse_generators(rd: &RootDatum, labels: &[(String, ExtAffElt)], s: &str) -> Result<Vec<Generator>> {
    let mut gens = Vec::new();
    for tok in tokenize(s)? {
        if tok == "e" {
            continue;
        }
        if let Some(rest) = tok.strip_prefix('s') {
            if !rest.is_empty() && rest.chars().all(|c| c.is_ascii_digit()) {
                let i: usize = rest.parse().map_err(|_| Error::UnknownToken(tok.clone()))?;
                if i >= rd.num_generators() {
                    return Err(Error::UnknownToken(tok));
                }
                gens.push(Generator::Simple(i));
                continue;
            }
        }
        if let Some(inner) = tok.strip_prefix("t[").and_then(|r| r.strip_suffix(']')) {
            let v = parse_vector(&tok, inner, rd.dim())?;
            if !rd.lattice_contains(&v) {
                return Err(Error::Weyl(format!("`{tok}`: translation is not in Λ")));
            }
            gens.push(Generator::Element(ExtAffElt::translation(rd, v)));
            continue;
        }
        if let Some(inner) = tok.strip_prefix("o[").and_then(|r| r.strip_suffix(']')) {
            let v = parse_vector(&tok, inner, rd.dim())?;
            if !rd.lattice_contains(&v) {
                return Err(Error::Weyl(format!("`{tok}`: vector is not in Λ")));
            }
            gens.push(Generator::Element(rd.omega_rep(&rd.omega.project(&v))));
            continue;
        }
        match labels.iter().find(|(n, _)| *n == tok) {
            Some((_, tau)) => gens.push(Generator::Element(tau.clone())),
            None => return Err(Error::UnknownToken(tok)),
        }
    }
    Ok(gens)
}

pub fn parse_tokens(rd: &RootDatum, labels: &[(String, ExtAffElt)], s: &str) -> Result<ExtAffElt> {
    let gens = parse_generators(rd, labels, s)?;
    rd.from_word(&gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_datum::{build_root_datum, CartanSpec, LatticeSpec};
    use proptest::prelude::*;

    fn a1_adjoint() -> Setting {
        let rd = build_root_datum(&CartanSpec::new("A1", LatticeSpec::Adjoint)).unwrap();
        Setting::build(rd, &[("p".into(), vec![1])], None, None, None).unwrap()
    }

    #[test]
    fn parse_and_print() {
        let st = a1_adjoint();
        let e = st.parse_element("").unwrap();
        assert!(e.is_identity());
        assert_eq!(st.format_element(&e), "e");
        let w = st.parse_element("s0 s1 s0").unwrap();
        assert_eq!(st.length(&w), 3);
        assert_eq!(st.format_element(&w), "s0 s1 s0");
        let p = st.parse_element("p").unwrap();
        assert_eq!(st.length(&p), 0);
        assert_eq!(st.format_element(&p), "p");
        let t = st.parse_element("t[1]").unwrap();
        assert_eq!(st.format_element(&t), "s0 p");
        assert_eq!(st.parse_element("s0 p").unwrap(), t);
        assert_eq!(st.parse_element("o[3]").unwrap(), p);
        assert_eq!(st.parse_element("o[ 1 ]").unwrap(), p);
    }

    #[test]
    fn unknown_tokens() {
        let st = a1_adjoint();
        for bad in ["s2", "q", "t[1,2]", "t[x]", "s0 ]", "t[1"] {
            assert!(st.parse_element(bad).is_err(), "{bad}");
        }
        assert_eq!(st.parse_element("zz").unwrap_err().to_string(), "weyl: unknown token `zz`");
        let rd = build_root_datum(&CartanSpec::new("A1", LatticeSpec::SimplyConnected)).unwrap();
        assert!(parse_tokens(&rd, &[], "t[1]").is_err());
    }

    #[test]
    fn unlabeled_omega_prints_bracket_form() {
        let rd = build_root_datum(&CartanSpec::new("A2", LatticeSpec::Adjoint)).unwrap();
        let st = Setting::build(rd, &[], None, None, None).unwrap();
        let tau = st.datum.omega_rep(&[1]);
        let s = st.format_element(&tau);
        assert!(s.starts_with("o["), "{s}");
        assert_eq!(st.parse_element(&s).unwrap(), tau);
    }

    #[test]
    fn label_validation() {
        let rd = build_root_datum(&CartanSpec::new("A1", LatticeSpec::Adjoint)).unwrap();
        for bad in ["s1", "e", "1x", "a-b"] {
            assert!(Setting::build(rd.clone(), &[(bad.into(), vec![1])], None, None, None).is_err(), "{bad}");
        }
        let rd2 = build_root_datum(&CartanSpec::new("A1", LatticeSpec::SimplyConnected)).unwrap();
        assert!(Setting::build(rd2, &[("p".into(), vec![1])], None, None, None).is_err());
    }

    #[test]
    fn inner_twist_via_label() {
        let rd = build_root_datum(&CartanSpec::new("A1", LatticeSpec::Adjoint)).unwrap();
        let st = Setting::build(rd, &[("p".into(), vec![1])], None, Some("p"), None).unwrap();
        assert_eq!(st.twist.gen_perm, vec![1, 0]);
        assert_eq!(st.theta(&st.datum.generator(0)), st.datum.generator(1));
        assert!(Setting::build(st.datum.clone(), &[("p".into(), vec![1])], None, Some("s0"), None).is_err());
    }

    proptest! {
        #[test]
        fn print_parse_round_trip(word in proptest::collection::vec(0usize..3, 0..10), tail in 0usize..3) {
            let rd = build_root_datum(&CartanSpec::new("A2", LatticeSpec::Adjoint)).unwrap();
            let st = Setting::build(rd, &[("w1".into(), vec![1, 0])], None, None, None).unwrap();
            let taus = st.datum.torsion_omega();
            let w = st.datum.word_element(&word).mul(&taus[tail]);
            let s = st.format_element(&w);
            prop_assert_eq!(st.parse_element(&s).unwrap(), w);
        }
    }
}
