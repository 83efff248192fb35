use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::monomial::{Monomial, MonomialOrder, MAX_VARS};
use crate::error::{Error, Result};
use crate::exactlin::Rational;

/// Sparse polynomial over the rationals in `y1..yn`, terms kept in strictly
/// descending order for `order` with no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    nvars: usize,
    order: MonomialOrder,
    terms: Vec<(Monomial, Rational)>,
}

impl Poly {
    pub fn zero(nvars: usize, order: MonomialOrder) -> Self {
        assert!(nvars <= MAX_VARS, "at most {MAX_VARS} variables");
        Poly { nvars, order, terms: Vec::new() }
    }

    pub fn constant(nvars: usize, order: MonomialOrder, c: Rational) -> Self {
        Self::from_terms(nvars, order, [(Monomial::ONE, c)])
    }

    /// The variable `y_{i+1}`.
    pub fn var(nvars: usize, order: MonomialOrder, i: usize) -> Self {
        assert!(i < nvars);
        Self::from_terms(nvars, order, [(Monomial::var(i), Rational::one())])
    }

    pub fn monomial(nvars: usize, order: MonomialOrder, m: Monomial, c: Rational) -> Self {
        Self::from_terms(nvars, order, [(m, c)])
    }

    /// Collects terms, combining like monomials and dropping zeros.
    pub fn from_terms(nvars: usize, order: MonomialOrder, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        assert!(nvars <= MAX_VARS, "at most {MAX_VARS} variables");
        let mut acc: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m, c) in terms {
            debug_assert!(m.support().all(|i| i < nvars), "monomial {m} outside ring of {nvars} variables");
            let e = acc.entry(m).or_insert_with(Rational::zero);
            *e += &c;
        }
        let mut terms: Vec<(Monomial, Rational)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        Poly { nvars, order, terms }
    }

    pub(crate) fn from_sorted_unchecked(nvars: usize, order: MonomialOrder, terms: Vec<(Monomial, Rational)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| order.cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        Poly { nvars, order, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Leading monomial; panics on zero.
    pub fn lm(&self) -> Monomial {
        self.terms[0].0
    }

    /// Leading coefficient; panics on zero.
    pub fn lc(&self) -> &Rational {
        &self.terms[0].1
    }

    /// Total degree (0 for the zero polynomial).
    pub fn degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let d = self.terms.first().map(|(m, _)| m.degree());
        self.terms.iter().all(|(m, _)| Some(m.degree()) == d)
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.iter().find(|(x, _)| x == m).map(|(_, c)| c.clone()).unwrap_or_else(Rational::zero)
    }

    /// Re-sorts the terms for another order.
    pub fn with_order(&self, order: MonomialOrder) -> Poly {
        if order == self.order {
            return self.clone();
        }
        let mut terms = self.terms.clone();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        Poly { nvars: self.nvars, order, terms }
    }

    /// Same polynomial viewed in a ring with more variables.
    pub fn widen(&self, nvars: usize) -> Poly {
        assert!(nvars >= self.nvars && nvars <= MAX_VARS);
        Poly { nvars, order: self.order, terms: self.terms.clone() }
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars, self.order);
        }
        Poly { nvars: self.nvars, order: self.order, terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect() }
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Poly {
        if self.is_zero() || self.lc().is_one() {
            return self.clone();
        }
        self.scale(&self.lc().recip())
    }

    /// Multiplies by the term `c * m`.
    pub fn mul_term(&self, m: Monomial, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars, self.order);
        }
        Poly { nvars: self.nvars, order: self.order, terms: self.terms.iter().map(|(x, a)| (*x * m, a * c)).collect() }
    }

    /// `self - c * m * g`, merging sorted term lists.
    pub fn sub_mul_term(&self, c: &Rational, m: Monomial, g: &Poly) -> Poly {
        Poly {
            nvars: self.nvars,
            order: self.order,
            terms: merge_sub(&self.terms, c, m, &g.terms, self.order),
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.sub_mul_term(&Rational::from_int(-1), Monomial::ONE, other)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.sub_mul_term(&Rational::one(), Monomial::ONE, other)
    }

    pub fn neg(&self) -> Poly {
        self.scale(&Rational::from_int(-1))
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut acc: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let e = acc.entry(*a * *b).or_insert_with(Rational::zero);
                *e += &(x * y);
            }
        }
        Poly::from_terms(self.nvars.max(other.nvars), self.order, acc)
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        self.terms
            .iter()
            .map(|(m, c)| {
                let mut v = c.clone();
                for i in m.support() {
                    for _ in 0..m.exponent(i) {
                        v = &v * &point[i];
                    }
                }
                v
            })
            .sum()
    }

    /// Substitutes `y_k := sum_j combo[j] y_j` (with `combo[k] = 0`) and
    /// drops `y_k`, renumbering later variables down by one.
    pub fn substitute_and_drop(&self, k: usize, combo: &[Rational]) -> Poly {
        assert!(k < self.nvars && combo.len() == self.nvars && combo[k].is_zero());
        let n1 = self.nvars - 1;
        let rename = |m: &Monomial| -> Monomial {
            let e = m.exponents(self.nvars);
            let mut out: Vec<u32> = e[..k].to_vec();
            out.extend_from_slice(&e[k + 1..]);
            Monomial::from_exponents(&out)
        };
        let image = Poly::from_terms(
            n1,
            self.order,
            combo
                .iter()
                .enumerate()
                .filter(|(j, c)| *j != k && !c.is_zero())
                .map(|(j, c)| (Monomial::var(if j < k { j } else { j - 1 }), c.clone())),
        );
        let mut out = Poly::zero(n1, self.order);
        for (m, c) in &self.terms {
            let e = m.exponent(k);
            let mut rest = *m;
            for _ in 0..e {
                rest = rest.colon_var(k);
            }
            let mut t = Poly::monomial(n1, self.order, rename(&rest), c.clone());
            for _ in 0..e {
                t = t.mul(&image);
            }
            out = out.add(&t);
        }
        out
    }

    /// Full normal form with respect to `divisors`, which must be monic and
    /// use the same order. Divisors are tried in the given order.
    pub fn reduce(&self, divisors: &[Poly]) -> Poly {
        normal_form(self, divisors.iter())
    }

    /// Parses text such as `y1*y2 - 3/2*y3^2 + 4`.
    pub fn parse(text: &str, nvars: usize, order: MonomialOrder) -> Result<Poly> {
        let bad = |msg: String| Error::Invalid(format!("cannot parse polynomial `{text}`: {msg}"));
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() || compact == "0" {
            return Ok(Poly::zero(nvars, order));
        }
        let mut pieces: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut negative = false;
        for (i, ch) in compact.chars().enumerate() {
            if (ch == '+' || ch == '-') && i > 0 && !cur.ends_with('^') {
                pieces.push((negative, std::mem::take(&mut cur)));
                negative = ch == '-';
            } else if (ch == '+' || ch == '-') && i == 0 {
                negative = ch == '-';
            } else {
                cur.push(ch);
            }
        }
        pieces.push((negative, cur));
        let mut terms = Vec::new();
        for (neg, piece) in pieces {
            if piece.is_empty() {
                return Err(bad("empty term".into()));
            }
            let mut coeff = Rational::one();
            let mut exps = vec![0u32; nvars];
            for factor in piece.split('*') {
                if let Some(var) = factor.strip_prefix('y') {
                    let (idx, pow) = match var.split_once('^') {
                        Some((i, p)) => (i, p.parse::<u32>().map_err(|e| bad(e.to_string()))?),
                        None => (var, 1),
                    };
                    let idx: usize = idx.parse().map_err(|_| bad(format!("bad variable `{factor}`")))?;
                    if idx == 0 || idx > nvars {
                        return Err(bad(format!("variable y{idx} outside y1..y{nvars}")));
                    }
                    exps[idx - 1] += pow;
                    if exps[idx - 1] > 255 {
                        return Err(bad("exponent above 255".into()));
                    }
                } else {
                    coeff = &coeff * &factor.parse::<Rational>().map_err(|e| bad(e.to_string()))?;
                }
            }
            if neg {
                coeff = -coeff;
            }
            terms.push((Monomial::from_exponents(&exps), coeff));
        }
        Ok(Poly::from_terms(nvars, order, terms))
    }
}

fn merge_sub(
    a: &[(Monomial, Rational)],
    c: &Rational,
    m: Monomial,
    b: &[(Monomial, Rational)],
    order: MonomialOrder,
) -> Vec<(Monomial, Rational)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() {
            out.extend_from_slice(&a[i..]);
            break;
        }
        let bm = b[j].0 * m;
        if i == a.len() {
            out.push((bm, -(c * &b[j].1)));
            j += 1;
            continue;
        }
        match order.cmp(&a[i].0, &bm) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push((bm, -(c * &b[j].1)));
                j += 1;
            }
            Ordering::Equal => {
                let v = &a[i].1 - &(c * &b[j].1);
                if !v.is_zero() {
                    out.push((bm, v));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Full reduction of `f` by monic `divisors`; the remainder has no term
/// divisible by any divisor's leading monomial.
pub(crate) fn normal_form<'a>(f: &Poly, divisors: impl Iterator<Item = &'a Poly> + Clone) -> Poly {
    let order = f.order;
    let mut live: Vec<(Monomial, Rational)> = f.terms.clone();
    let mut start = 0;
    let mut rem: Vec<(Monomial, Rational)> = Vec::new();
    while start < live.len() {
        let m = live[start].0;
        match divisors.clone().find(|g| !g.is_zero() && g.lm().divides(&m)) {
            Some(g) => {
                debug_assert!(g.lc().is_one());
                let c = live[start].1.clone();
                let q = g.lm().quotient_of(&m);
                live = merge_sub(&live[start + 1..], &c, q, &g.terms[1..], order);
                start = 0;
            }
            None => {
                rem.push(live[start].clone());
                start += 1;
            }
        }
    }
    Poly { nvars: f.nvars, order, terms: rem }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            match (a.is_one(), m.is_one()) {
                (_, true) => write!(f, "{a}")?,
                (true, false) => write!(f, "{m}")?,
                (false, false) => write!(f, "{a}*{m}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Poly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const G: MonomialOrder = MonomialOrder::Grevlex;

    fn p(s: &str, n: usize) -> Poly {
        Poly::parse(s, n, G).unwrap()
    }

    #[test]
    fn parse_and_render() {
        let f = p("y2*y3*y4 + y1*y3*y4 + y1*y2*y4 - y1*y2*y3", 4);
        assert_eq!(f.len(), 4);
        assert_eq!(f.to_string(), "-y1*y2*y3 + y1*y2*y4 + y1*y3*y4 + y2*y3*y4");
        assert_eq!(p("3/2*y1^2 - 2 + y1^2", 2).to_string(), "5/2*y1^2 - 2");
        assert!(Poly::parse("y3", 2, G).is_err());
        assert!(p("y1 - y1", 2).is_zero());
    }

    #[test]
    fn arithmetic() {
        let a = p("y1 + y2", 2);
        let b = p("y1 - y2", 2);
        assert_eq!(a.mul(&b), p("y1^2 - y2^2", 2));
        assert_eq!(a.add(&b), p("2*y1", 2));
        assert_eq!(a.sub(&b), p("2*y2", 2));
        assert_eq!(a.mul_term(Monomial::var(0), &Rational::from_int(3)), p("3*y1^2 + 3*y1*y2", 2));
    }

    #[test]
    fn substitution() {
        // y2 := y1 + 2 y3 in y1*y2 + y2^2, then y3 becomes y2
        let f = p("y1*y2 + y2^2", 3);
        let combo = vec![Rational::one(), Rational::zero(), Rational::from_int(2)];
        let g = f.substitute_and_drop(1, &combo);
        assert_eq!(g.nvars(), 2);
        assert_eq!(g, p("y1^2 + 2*y1*y2 + y1^2 + 4*y1*y2 + 4*y2^2", 2));
        let zero = vec![Rational::zero(); 3];
        assert_eq!(p("y1*y2 + y3^2", 3).substitute_and_drop(0, &zero), p("y2^2", 2));
    }

    #[test]
    fn evaluation() {
        let f = p("y2*y3*y4 + y1*y3*y4 + y1*y2*y4 - y1*y2*y3", 4);
        let pt: Vec<Rational> = [1, 2, 3, 6].iter().map(|&a| Rational::new(1, a)).collect();
        assert!(f.eval(&pt).is_zero());
    }

    #[test]
    fn division_single_step() {
        let g = p("y2*y3*y4 + y1*y3*y4 + y1*y2*y4 - y1*y2*y3", 4).with_order(MonomialOrder::Lex).monic();
        let f = Poly::parse("y1*y2*y3", 4, MonomialOrder::Lex).unwrap();
        let r = f.reduce(std::slice::from_ref(&g));
        assert_eq!(r, Poly::parse("y2*y3*y4 + y1*y3*y4 + y1*y2*y4", 4, MonomialOrder::Lex).unwrap());
    }
}
