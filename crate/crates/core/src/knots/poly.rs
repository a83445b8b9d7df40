use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::scalar::Real;

/// Exponents of `x`, `y`, `z`.
pub type Exponents = [u32; 3];

/// Sparse polynomial with exact integer coefficients in the trace
/// coordinates `x = Tr A`, `y = Tr B`, `z = Tr AB`.
///
/// For two-bridge polynomials only `x` and `y` occur, with `x = Tr u = Tr v`
/// and `y = Tr uv`. No zero coefficient is ever stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct TracePolynomial {
    terms: BTreeMap<Exponents, BigInt>,
}

impl TracePolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial([0, 0, 0], BigInt::from(c))
    }

    pub fn monomial(exp: Exponents, c: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Self { terms }
    }

    pub fn x() -> Self {
        Self::monomial([1, 0, 0], BigInt::one())
    }

    pub fn y() -> Self {
        Self::monomial([0, 1, 0], BigInt::one())
    }

    pub fn z() -> Self {
        Self::monomial([0, 0, 1], BigInt::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exp: Exponents) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    /// Highest power of variable `var` (0 = x, 1 = y, 2 = z).
    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|e| e[var]).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    fn add_term(&mut self, exp: Exponents, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        let mut out = Self::zero();
        for (e, v) in &self.terms {
            out.add_term(*e, &(v * c));
        }
        out
    }

    /// Substitutes `y ↦ x` and `z ↦ y`: the specialization used for
    /// two-bridge knots, whose generators are conjugate.
    pub fn collapse_conjugate_generators(&self) -> Self {
        let mut out = Self::zero();
        for (e, v) in &self.terms {
            out.add_term([e[0] + e[1], e[2], 0], v);
        }
        out
    }

    pub fn eval<T: Real>(&self, x: T, y: T, z: T) -> T {
        self.terms.iter().fold(T::zero(), |acc, (e, c)| {
            let c = T::lit(c.to_f64().unwrap_or(f64::NAN));
            acc + c * x.powi(e[0] as i32) * y.powi(e[1] as i32) * z.powi(e[2] as i32)
        })
    }

    pub fn eval_xy<T: Real>(&self, x: T, y: T) -> T {
        self.eval(x, y, T::zero())
    }

    /// Exact evaluation at integer points.
    pub fn eval_int(&self, x: i64, y: i64, z: i64) -> BigInt {
        self.terms.iter().fold(BigInt::zero(), |acc, (e, c)| {
            acc + c
                * num_traits::pow(BigInt::from(x), e[0] as usize)
                * num_traits::pow(BigInt::from(y), e[1] as usize)
                * num_traits::pow(BigInt::from(z), e[2] as usize)
        })
    }

    /// Terms in printing order: decreasing total degree, ties broken by the
    /// exponent of `y`, then `x`, then `z`, each decreasing.
    pub fn sorted_terms(&self) -> Vec<(Exponents, BigInt)> {
        let mut v: Vec<_> = self.terms.iter().map(|(e, c)| (*e, c.clone())).collect();
        v.sort_by(|(a, _), (b, _)| print_order(b, a));
        v
    }
}

fn print_order(a: &Exponents, b: &Exponents) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db)
        .then(a[1].cmp(&b[1]))
        .then(a[0].cmp(&b[0]))
        .then(a[2].cmp(&b[2]))
}

impl fmt::Display for TracePolynomial {
    /// `x^2*y - y^2 - 2*x^2 + 3` style.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in self.sorted_terms().into_iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (idx, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut factors: Vec<String> = Vec::new();
            for (var, &p) in ["x", "y", "z"].iter().zip(e.iter()) {
                match p {
                    0 => {}
                    1 => factors.push((*var).to_string()),
                    _ => factors.push(format!("{var}^{p}")),
                }
            }
            if factors.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{mag}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for TracePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TracePolynomial({self})")
    }
}

impl Add for &TracePolynomial {
    type Output = TracePolynomial;
    fn add(self, rhs: &TracePolynomial) -> TracePolynomial {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c);
        }
        out
    }
}

impl Sub for &TracePolynomial {
    type Output = TracePolynomial;
    fn sub(self, rhs: &TracePolynomial) -> TracePolynomial {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, &-c);
        }
        out
    }
}

impl Neg for &TracePolynomial {
    type Output = TracePolynomial;
    fn neg(self) -> TracePolynomial {
        self.scale(&BigInt::from(-1))
    }
}

impl Mul for &TracePolynomial {
    type Output = TracePolynomial;
    fn mul(self, rhs: &TracePolynomial) -> TracePolynomial {
        let mut out = TracePolynomial::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term([ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]], &(ca * cb));
            }
        }
        out
    }
}
