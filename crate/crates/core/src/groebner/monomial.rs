use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;

/// Maximum number of ring variables.
pub const MAX_VARS: usize = 16;

/// A monomial `y_1^e_1 ... y_16^e_16` with exponents below 256.
///
/// Unused trailing slots are zero, so equality does not depend on the ring.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exps: [u8; MAX_VARS],
    deg: u16,
    /// bit `i` set iff `y_i` divides the monomial
    mask: u16,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { exps: [0; MAX_VARS], deg: 0, mask: 0 };

    /// The variable `y_{i+1}` (0-based index `i`).
    pub fn var(i: usize) -> Self {
        let mut m = Self::ONE;
        m.exps[i] = 1;
        m.deg = 1;
        m.mask = 1 << i;
        m
    }

    /// Builds from an exponent slice. Panics if there are more than
    /// [`MAX_VARS`] entries or an exponent exceeds 255.
    pub fn from_exponents(e: &[u32]) -> Self {
        assert!(e.len() <= MAX_VARS, "at most {MAX_VARS} variables");
        let mut m = Self::ONE;
        for (i, &x) in e.iter().enumerate() {
            assert!(x < 256, "exponent {x} out of range");
            m.exps[i] = x as u8;
            m.deg += x as u16;
            if x > 0 {
                m.mask |= 1 << i;
            }
        }
        m
    }

    /// Product of the variables with the given 0-based indices.
    pub fn squarefree(indices: &[usize]) -> Self {
        indices.iter().fold(Self::ONE, |m, &i| m * Self::var(i))
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.exps[i] as u32
    }

    pub fn exponents(&self, nvars: usize) -> Vec<u32> {
        self.exps[..nvars].iter().map(|&e| e as u32).collect()
    }

    pub fn degree(&self) -> u32 {
        self.deg as u32
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    /// 0-based indices of variables present.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        (0..MAX_VARS).filter(move |&i| self.exps[i] > 0)
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        if self.mask & !other.mask != 0 || self.deg > other.deg {
            return false;
        }
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`; caller guarantees divisibility.
    #[inline]
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        let mut m = Self::ONE;
        for i in 0..MAX_VARS {
            m.exps[i] = other.exps[i] - self.exps[i];
            if m.exps[i] > 0 {
                m.mask |= 1 << i;
            }
        }
        m.deg = other.deg - self.deg;
        m
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut m = Self::ONE;
        for i in 0..MAX_VARS {
            m.exps[i] = self.exps[i].max(other.exps[i]);
            m.deg += m.exps[i] as u16;
        }
        m.mask = self.mask | other.mask;
        m
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut m = Self::ONE;
        for i in 0..MAX_VARS {
            m.exps[i] = self.exps[i].min(other.exps[i]);
            m.deg += m.exps[i] as u16;
        }
        m.mask = self.mask & other.mask;
        m
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.mask & other.mask == 0
    }

    /// Lowers the exponent of `y_i` by one, if positive (the colon `m : y_i`).
    pub fn colon_var(&self, i: usize) -> Monomial {
        let mut m = *self;
        if m.exps[i] > 0 {
            m.exps[i] -= 1;
            m.deg -= 1;
            if m.exps[i] == 0 {
                m.mask &= !(1 << i);
            }
        }
        m
    }

    /// Writes the monomial as `y1*y2^2`, or `1`.
    pub fn render(&self) -> String {
        if self.is_one() {
            return "1".into();
        }
        self.support()
            .map(|i| match self.exps[i] {
                1 => format!("y{}", i + 1),
                e => format!("y{}^{e}", i + 1),
            })
            .collect::<Vec<_>>()
            .join("*")
    }
}

impl std::ops::Mul for Monomial {
    type Output = Monomial;

    fn mul(self, rhs: Monomial) -> Monomial {
        let mut m = Self::ONE;
        for i in 0..MAX_VARS {
            m.exps[i] = self.exps[i].checked_add(rhs.exps[i]).expect("exponent overflow (max 255)");
        }
        m.deg = self.deg + rhs.deg;
        m.mask = self.mask | rhs.mask;
        m
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl Serialize for Monomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.render())
    }
}

/// Monomial order with variable precedence `y1 > y2 > ... > yd`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MonomialOrder {
    Lex,
    #[default]
    Grevlex,
}

impl MonomialOrder {
    #[inline]
    pub fn cmp(self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => a.exps.cmp(&b.exps),
            MonomialOrder::Grevlex => a.deg.cmp(&b.deg).then_with(|| {
                for i in (0..MAX_VARS).rev() {
                    if a.exps[i] != b.exps[i] {
                        return b.exps[i].cmp(&a.exps[i]);
                    }
                }
                Ordering::Equal
            }),
        }
    }
}

impl std::str::FromStr for MonomialOrder {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "lex" => Ok(MonomialOrder::Lex),
            "grevlex" => Ok(MonomialOrder::Grevlex),
            _ => Err(format!("unknown monomial order `{s}`")),
        }
    }
}

/// All monomials of total degree `deg` in `nvars` variables, in descending
/// order for `order`.
pub fn monomials_of_degree(nvars: usize, deg: u32, order: MonomialOrder) -> Vec<Monomial> {
    fn rec(nvars: usize, i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i + 1 == nvars {
            cur.push(left);
            out.push(Monomial::from_exponents(cur));
            cur.pop();
            return;
        }
        for e in (0..=left).rev() {
            cur.push(e);
            rec(nvars, i + 1, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if deg == 0 {
            out.push(Monomial::ONE);
        }
        return out;
    }
    rec(nvars, 0, deg, &mut Vec::new(), &mut out);
    out.sort_by(|a, b| order.cmp(b, a));
    out
}
