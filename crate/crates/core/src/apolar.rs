//! Inverse systems: elements of `⊕_j S^* e_j^*` with the contraction action,
//! and modules presented as `F / (generators)^⊥`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::rational::{fmt_q, parse_q};
use crate::exact::{QMat, Subspace, Q};
use crate::module::FiniteModule;

/// Per-slot polynomials in the dual variables `y_1..y_n`; slot `j` is the
/// coefficient of `e_{j+1}^*`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DualElement {
    nvars: usize,
    slots: Vec<BTreeMap<Vec<u16>, Q>>,
}

impl DualElement {
    pub fn zero(slots: usize, nvars: usize) -> Self {
        DualElement {
            nvars,
            slots: vec![BTreeMap::new(); slots],
        }
    }

    /// Parses one polynomial per slot, e.g. `["y1^2 + y2", "y4"]`.
    pub fn parse(slots: &[&str], nvars: usize) -> Result<Self> {
        let mut d = Self::zero(slots.len(), nvars);
        for (j, s) in slots.iter().enumerate() {
            for (e, c) in parse_poly(s, nvars)? {
                d.add_term(j, e, c);
            }
        }
        Ok(d)
    }

    pub fn num_slots(&self) -> usize {
        self.slots.len()
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn add_term(&mut self, slot: usize, exps: Vec<u16>, c: Q) {
        let e = self.slots[slot].entry(exps.clone()).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.slots[slot].remove(&exps);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.slots.iter().all(|s| s.is_empty())
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &Vec<u16>, &Q)> {
        self.slots
            .iter()
            .enumerate()
            .flat_map(|(j, s)| s.iter().map(move |(e, c)| (j, e, c)))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut out = serde_json::Map::new();
        for (j, s) in self.slots.iter().enumerate() {
            let m: serde_json::Map<String, serde_json::Value> = s
                .iter()
                .map(|(e, c)| (monomial_string(e), serde_json::Value::String(fmt_q(c))))
                .collect();
            out.insert(format!("{}", j + 1), serde_json::Value::Object(m));
        }
        serde_json::Value::Object(out)
    }

    pub fn from_json(v: &serde_json::Value, slots: usize, nvars: usize) -> Result<Self> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Parse("dual element must be an object".into()))?;
        let mut d = Self::zero(slots, nvars);
        for (k, m) in obj {
            let j: usize = k
                .parse()
                .map_err(|_| Error::Parse(format!("bad slot {k:?}")))?;
            if j == 0 || j > slots {
                return Err(Error::Parse(format!("slot {j} out of range")));
            }
            let m = m
                .as_object()
                .ok_or_else(|| Error::Parse("slot must map monomials to coefficients".into()))?;
            for (mono, c) in m {
                let c = c
                    .as_str()
                    .ok_or_else(|| Error::Parse("coefficients are strings".into()))?;
                let (e, one) = parse_poly(mono, nvars)?
                    .pop()
                    .ok_or_else(|| Error::Parse(format!("bad monomial {mono:?}")))?;
                debug_assert!(one.is_one());
                d.add_term(j - 1, e, parse_q(c)?);
            }
        }
        Ok(d)
    }
}

impl std::fmt::Display for DualElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts = Vec::new();
        for (j, s) in self.slots.iter().enumerate() {
            if s.is_empty() {
                continue;
            }
            let inner: Vec<String> = s
                .iter()
                .rev()
                .map(|(e, c)| {
                    let mono = monomial_string(e);
                    if c.is_one() {
                        mono
                    } else if mono == "1" {
                        fmt_q(c)
                    } else {
                        format!("{}*{}", fmt_q(c), mono)
                    }
                })
                .collect();
            parts.push(format!("({})e{}*", inner.join(" + "), j + 1));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

fn monomial_string(e: &[u16]) -> String {
    let v: Vec<String> = e
        .iter()
        .enumerate()
        .filter(|(_, &k)| k > 0)
        .map(|(i, &k)| {
            if k == 1 {
                format!("y{}", i + 1)
            } else {
                format!("y{}^{}", i + 1, k)
            }
        })
        .collect();
    if v.is_empty() {
        "1".into()
    } else {
        v.join("*")
    }
}

/// Parses `"y1^2 + 2*y2 - y3*y4"` into exponent vectors (1-based variables).
fn parse_poly(s: &str, nvars: usize) -> Result<Vec<(Vec<u16>, Q)>> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Error::Parse(format!("bad dual polynomial {s:?}"));
    let mut terms = Vec::new();
    let mut cur = String::new();
    for (i, ch) in compact.chars().enumerate() {
        if (ch == '+' || ch == '-') && i > 0 && !cur.ends_with('^') {
            terms.push(std::mem::take(&mut cur));
        }
        cur.push(ch);
    }
    if !cur.is_empty() {
        terms.push(cur);
    }
    let mut out = Vec::new();
    for t in terms {
        let (neg, body) = match t.strip_prefix('-') {
            Some(b) => (true, b.to_string()),
            None => (false, t.trim_start_matches('+').to_string()),
        };
        let mut coeff = Q::one();
        let mut e = vec![0u16; nvars];
        for factor in body.split('*') {
            if let Some(v) = factor.strip_prefix('y') {
                let (idx, pow) = match v.split_once('^') {
                    Some((a, b)) => (a, b.parse::<u16>().map_err(|_| bad())?),
                    None => (v, 1),
                };
                let i: usize = idx.parse().map_err(|_| bad())?;
                if i == 0 || i > nvars {
                    return Err(bad());
                }
                e[i - 1] += pow;
            } else {
                coeff *= parse_q(factor)?;
            }
        }
        if neg {
            coeff = -coeff;
        }
        out.push((e, coeff));
    }
    Ok(out)
}

/// `x_i ∘ d`: lowers the exponent of `y_i` by one; terms without `y_i` vanish.
pub fn contract(i: usize, d: &DualElement) -> DualElement {
    let mut out = DualElement::zero(d.num_slots(), d.nvars);
    for (j, e, c) in d.terms() {
        if e[i] > 0 {
            let mut f = e.clone();
            f[i] -= 1;
            out.add_term(j, f, c.clone());
        }
    }
    out
}

/// Coordinates for contraction closures: every (slot, divisor monomial) of the
/// generators, higher degree first.
fn coordinate_index(gens: &[DualElement]) -> Vec<(usize, Vec<u16>)> {
    fn divisors(e: &[u16]) -> Vec<Vec<u16>> {
        let mut out = vec![vec![]];
        for &k in e {
            out = out
                .into_iter()
                .flat_map(|p| (0..=k).map(move |a| [p.clone(), vec![a]].concat()))
                .collect();
        }
        out
    }
    let mut keys: Vec<(usize, Vec<u16>)> = Vec::new();
    for g in gens {
        for (j, e, _) in g.terms() {
            for d in divisors(e) {
                keys.push((j, d));
            }
        }
    }
    keys.sort_by(|a, b| {
        let da: u32 = a.1.iter().map(|&x| x as u32).sum();
        let db: u32 = b.1.iter().map(|&x| x as u32).sum();
        db.cmp(&da)
            .then_with(|| b.1.cmp(&a.1))
            .then_with(|| a.0.cmp(&b.0))
    });
    keys.dedup();
    keys
}

fn to_vec(d: &DualElement, index: &[(usize, Vec<u16>)]) -> Vec<Q> {
    let mut v = vec![Q::zero(); index.len()];
    for (j, e, c) in d.terms() {
        let pos = index
            .iter()
            .position(|(s, f)| *s == j && f == e)
            .expect("closure stays inside the divisor set");
        v[pos] = c.clone();
    }
    v
}

fn from_vec(v: &[Q], index: &[(usize, Vec<u16>)], slots: usize, nvars: usize) -> DualElement {
    let mut d = DualElement::zero(slots, nvars);
    for (x, (j, e)) in v.iter().zip(index) {
        if !x.is_zero() {
            d.add_term(*j, e.clone(), x.clone());
        }
    }
    d
}

/// Span of all contractions of the generators, in reduced echelon form.
pub fn contraction_closure(gens: &[DualElement]) -> (Subspace, Vec<(usize, Vec<u16>)>) {
    let index = coordinate_index(gens);
    let (slots, nvars) = gens.first().map_or((0, 0), |g| (g.num_slots(), g.nvars));
    let mut span = Subspace::span(
        index.len(),
        &gens.iter().map(|g| to_vec(g, &index)).collect::<Vec<_>>(),
    );
    let mut frontier: Vec<DualElement> = gens.to_vec();
    while let Some(d) = frontier.pop() {
        for i in 0..nvars {
            let c = contract(i, &d);
            if c.is_zero() {
                continue;
            }
            let v = to_vec(&c, &index);
            if !span.contains(&v) {
                let mut b = span.basis();
                b.push(v);
                span = Subspace::span(index.len(), &b);
                frontier.push(c);
            }
        }
    }
    let _ = slots;
    (span, index)
}

/// The module `F / (gens)^⊥`: the dual of the contraction closure.
pub fn module_from_dual_generators(gens: &[DualElement], nvars: usize) -> Result<FiniteModule> {
    if gens.iter().any(|g| g.nvars != nvars) {
        return Err(Error::ShapeMismatch(
            "generators use a different number of variables".into(),
        ));
    }
    let slots = gens.first().map_or(0, |g| g.num_slots());
    if gens.iter().any(|g| g.num_slots() != slots) {
        return Err(Error::ShapeMismatch(
            "generators have different slot counts".into(),
        ));
    }
    let (span, index) = contraction_closure(gens);
    let basis = span.basis();
    let d = basis.len();
    let mut actions = Vec::new();
    for i in 0..nvars {
        let mut x = QMat::zeros(d, d);
        for (col, b) in basis.iter().enumerate() {
            let img = to_vec(&contract(i, &from_vec(b, &index, slots, nvars)), &index);
            let coords = span
                .coordinates(&img)
                .expect("closure is contraction-stable");
            for (row, c) in coords.into_iter().enumerate() {
                x[(row, col)] = c;
            }
        }
        actions.push(x);
    }
    Ok(FiniteModule::new(d, actions)?.dual())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;
    use crate::module::{local_invariants, module_flags};

    fn el(s: &[&str]) -> DualElement {
        DualElement::parse(s, 4).unwrap()
    }

    #[test]
    fn contraction_rules() {
        let d = el(&["y1^2", "0"]);
        assert_eq!(contract(0, &d), el(&["y1", "0"]));
        assert!(contract(1, &el(&["y1", "0"])).is_zero());
        let s = el(&["y1^2 + y2", "y4"]);
        assert_eq!(contract(0, &contract(0, &s)), el(&["1", "0"]));
    }

    #[test]
    fn trivial_generator() {
        let g = DualElement::parse(&["1"], 1).unwrap();
        let m = module_from_dual_generators(&[g], 1).unwrap();
        assert_eq!(m.dim(), 1);
        assert!(m.action(0).is_zero());
    }

    #[test]
    fn sixteen_and_twenty() {
        let m16 =
            module_from_dual_generators(&[el(&["y1^2 + y2", "y4"]), el(&["y3", "0"])], 4).unwrap();
        assert_eq!(m16.dim(), 5);
        assert_eq!(module_flags(&m16), (true, true));
        let m20 =
            module_from_dual_generators(&[el(&["y1^2", "y2"]), el(&["y3", "y4"])], 4).unwrap();
        assert_eq!(m20.dim(), 5);
        assert_eq!(module_flags(&m20), (true, false));
        let li = local_invariants(&m20).unwrap();
        assert_eq!(
            (li.min_generators, li.socle_dim, li.hilbert.clone()),
            (2, 2, vec![2, 2, 1])
        );
    }

    #[test]
    fn json_and_display() {
        let s = el(&["y1^2 + 2*y2", "-y4"]);
        assert_eq!(s.to_string(), "(y1^2 + 2*y2)e1* + (-1*y4)e2*");
        assert_eq!(DualElement::from_json(&s.to_json(), 2, 4).unwrap(), s);
        let mut t = DualElement::zero(1, 2);
        t.add_term(0, vec![1, 0], q(3));
        assert_eq!(t.to_string(), "(3*y1)e1*");
    }
}
