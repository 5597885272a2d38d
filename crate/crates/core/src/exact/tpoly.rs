//! Laurent polynomials in one parameter `t` with rational coefficients.
//!
//! Family matrices may carry negative powers of `t`; a family has a limit at
//! `t = 0` exactly when every transformed coefficient has valuation `>= 0`.

use std::fmt;

use num_traits::{One, Signed, Zero};

use super::rational::{fmt_q, parse_q, Q};
use super::ring::CommRing;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct TPoly {
    /// Exponent of `coeffs[0]`.
    low: i32,
    /// No zero at either end; empty for the zero polynomial.
    coeffs: Vec<Q>,
}

impl TPoly {
    pub fn zero() -> Self {
        TPoly {
            low: 0,
            coeffs: vec![],
        }
    }

    pub fn constant(c: Q) -> Self {
        Self::from_terms(0, vec![c])
    }

    pub fn one() -> Self {
        Self::constant(Q::one())
    }

    /// `c * t^e`
    pub fn monomial(c: Q, e: i32) -> Self {
        Self::from_terms(e, vec![c])
    }

    pub fn t() -> Self {
        Self::monomial(Q::one(), 1)
    }

    pub fn from_terms(low: i32, coeffs: Vec<Q>) -> Self {
        let mut p = TPoly { low, coeffs };
        p.normalize();
        p
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.low += lead as i32;
        }
        if self.coeffs.is_empty() {
            self.low = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest exponent with a nonzero coefficient; `None` for zero.
    pub fn valuation(&self) -> Option<i32> {
        (!self.is_zero()).then_some(self.low)
    }

    pub fn degree(&self) -> Option<i32> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i32 - 1)
    }

    pub fn coeff(&self, e: i32) -> Q {
        let i = e - self.low;
        if i < 0 || i as usize >= self.coeffs.len() {
            Q::zero()
        } else {
            self.coeffs[i as usize].clone()
        }
    }

    /// Value at `t = 0`; requires no negative powers.
    pub fn at_zero(&self) -> Option<Q> {
        match self.valuation() {
            None => Some(Q::zero()),
            Some(v) if v >= 0 => Some(self.coeff(0)),
            _ => None,
        }
    }

    pub fn eval(&self, t: &Q) -> Option<Q> {
        if t.is_zero() {
            return self.at_zero();
        }
        let mut acc = Q::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c;
        }
        // acc = sum c_i t^i; multiply by t^low
        let p = if self.low >= 0 {
            t.pow(self.low)
        } else {
            t.recip().pow(-self.low)
        };
        Some(acc * p)
    }

    /// `p(c t)`
    pub fn rescale(&self, c: &Q) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, a)| {
                let e = self.low + i as i32;
                let f = if e >= 0 { c.pow(e) } else { c.recip().pow(-e) };
                a * f
            })
            .collect();
        Self::from_terms(self.low, coeffs)
    }

    pub fn scale(&self, c: &Q) -> Self {
        Self::from_terms(self.low, self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &Q)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.low + i as i32, c))
    }

    /// Parse sums of terms such as `1 - 1/2*t + 3t^2 - t^-1`.
    pub fn parse(s: &str) -> Result<Self> {
        let err = || Error::Parse(format!("bad polynomial in t: {s:?}"));
        let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned.is_empty() {
            return Err(err());
        }
        let mut terms: Vec<String> = Vec::new();
        let mut cur = String::new();
        let chars: Vec<char> = cleaned.chars().collect();
        for (i, &ch) in chars.iter().enumerate() {
            let after_caret = i > 0 && chars[i - 1] == '^';
            if (ch == '+' || ch == '-') && !cur.is_empty() && !after_caret {
                terms.push(std::mem::take(&mut cur));
            }
            cur.push(ch);
        }
        terms.push(cur);
        let mut acc = TPoly::zero();
        for term in terms {
            let (neg, body) = match term.strip_prefix('-') {
                Some(b) => (true, b.to_string()),
                None => (false, term.trim_start_matches('+').to_string()),
            };
            if body.is_empty() {
                return Err(err());
            }
            let (coef, exp) = match body.find('t') {
                None => (parse_q(&body).map_err(|_| err())?, 0),
                Some(pos) => {
                    let c = body[..pos].trim_end_matches('*');
                    let coef = if c.is_empty() {
                        Q::one()
                    } else {
                        parse_q(c).map_err(|_| err())?
                    };
                    let rest = &body[pos + 1..];
                    let exp = if rest.is_empty() {
                        1
                    } else {
                        rest.strip_prefix('^')
                            .ok_or_else(err)?
                            .parse::<i32>()
                            .map_err(|_| err())?
                    };
                    (coef, exp)
                }
            };
            let coef = if neg { -coef } else { coef };
            acc = acc.add(&TPoly::monomial(coef, exp));
        }
        Ok(acc)
    }
}

impl CommRing for TPoly {
    fn zero() -> Self {
        TPoly::zero()
    }

    fn one() -> Self {
        TPoly::one()
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn add(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let low = self.low.min(o.low);
        let high = self.degree().unwrap().max(o.degree().unwrap());
        let coeffs = (low..=high).map(|e| self.coeff(e) + o.coeff(e)).collect();
        TPoly::from_terms(low, coeffs)
    }

    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return TPoly::zero();
        }
        let mut coeffs = vec![Q::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        TPoly::from_terms(self.low + o.low, coeffs)
    }
}

impl TPoly {
    pub fn neg(&self) -> Self {
        TPoly {
            low: self.low,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for TPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms() {
            let (neg, a) = (c.is_negative(), c.abs());
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            match e {
                0 => write!(f, "{}", fmt_q(&a))?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{}*", fmt_q(&a))?;
                    }
                    if e == 1 {
                        write!(f, "t")?;
                    } else {
                        write!(f, "t^{e}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{q, qf};

    #[test]
    fn parse_print_round_trip() {
        for s in ["0", "1", "-t", "1/2*t^2 - 3", "t^-1 + 2 - 5/7*t^3"] {
            let p = TPoly::parse(s).unwrap();
            let again = TPoly::parse(&p.to_string()).unwrap();
            assert_eq!(p, again, "{s}");
        }
        assert_eq!(TPoly::parse("3t^2").unwrap(), TPoly::monomial(q(3), 2));
        assert!(TPoly::parse("t^").is_err());
        assert!(TPoly::parse("").is_err());
    }

    #[test]
    fn valuation_and_limits() {
        let p = TPoly::parse("t^-1 + 2").unwrap();
        assert_eq!(p.valuation(), Some(-1));
        assert_eq!(p.at_zero(), None);
        let q2 = p.mul(&TPoly::t());
        assert_eq!(q2.at_zero(), Some(q(1)));
        assert_eq!(q2.eval(&qf(1, 2)), Some(q(2)));
        assert_eq!(p.eval(&q(2)), Some(qf(5, 2)));
    }

    #[test]
    fn no_trailing_zeros() {
        let p = TPoly::parse("t - t").unwrap();
        assert!(p.is_zero());
        assert_eq!(p.valuation(), None);
    }

    #[test]
    fn rescale_substitutes() {
        let p = TPoly::parse("1 + t + t^-1").unwrap();
        let r = p.rescale(&q(2));
        assert_eq!(r, TPoly::parse("1 + 2t + 1/2*t^-1").unwrap());
    }
}
