//! Univariate polynomials and rational functions over the rationals.

use crate::exactlin::{fmt_rat, rat, Rat};
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Dense polynomial, coefficients from degree zero upwards, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Poly {
    c: Vec<Rat>,
}

impl Poly {
    pub fn new(mut c: Vec<Rat>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Poly { c }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| rat(x)).collect())
    }

    pub fn zero() -> Self {
        Poly { c: Vec::new() }
    }

    pub fn one() -> Self {
        Poly { c: vec![Rat::one()] }
    }

    pub fn constant(x: Rat) -> Self {
        Self::new(vec![x])
    }

    pub fn monomial(x: Rat, k: usize) -> Self {
        let mut c = vec![Rat::zero(); k + 1];
        c[k] = x;
        Self::new(c)
    }

    /// `1 - t^k`
    pub fn one_minus_t_pow(k: usize) -> Self {
        if k == 0 {
            return Self::zero();
        }
        let mut c = vec![Rat::zero(); k + 1];
        c[0] = Rat::one();
        c[k] = -Rat::one();
        Self::new(c)
    }

    /// `1 + t + ... + t^(k-1)`
    pub fn geometric(k: usize) -> Self {
        Self::new(vec![Rat::one(); k])
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.c
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.c.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rat {
        self.c.last().cloned().unwrap_or_else(Rat::zero)
    }

    /// Smallest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.c.iter().position(|x| !x.is_zero())
    }

    pub fn scale(&self, k: &Rat) -> Self {
        Self::new(self.c.iter().map(|x| x * k).collect())
    }

    /// Multiply by `t^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![Rat::zero(); k];
        c.extend(self.c.iter().cloned());
        Self::new(c)
    }

    /// Substitute `t -> t^k`.
    pub fn subs_power(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![Rat::zero(); (self.c.len() - 1) * k + 1];
        for (i, x) in self.c.iter().enumerate() {
            c[i * k] = x.clone();
        }
        Self::new(c)
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        self.c.iter().rev().fold(Rat::zero(), |acc, c| acc * x + c)
    }

    /// `t^n p(1/t)` with `n = deg p`.
    pub fn reversed(&self) -> Self {
        Self::new(self.c.iter().rev().cloned().collect())
    }

    /// Quotient and remainder of Euclidean division.
    pub fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let dd = d.degree().unwrap();
        let lead = d.leading();
        let mut r = self.c.clone();
        if r.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut q = vec![Rat::zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let k = &r[i + dd] / &lead;
            if k.is_zero() {
                continue;
            }
            for (j, dc) in d.c.iter().enumerate() {
                r[i + j] -= &k * dc;
            }
            q[i] = k;
        }
        (Poly::new(q), Poly::new(r))
    }

    /// Exact quotient, if `d` divides `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        let (q, r) = self.divrem(d);
        r.is_zero().then_some(q)
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.leading().recip())
    }

    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn truncate(&self, n: usize) -> Poly {
        Poly::new(self.c.iter().take(n).cloned().collect())
    }

    pub fn is_nonnegative(&self) -> bool {
        self.c.iter().all(|x| !x.is_negative())
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.c.iter().map(fmt_rat).collect()
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        Poly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        Poly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![Rat::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Poly::new(c)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.c.iter().map(|x| -x).collect())
    }
}

fn fmt_terms(c: &[Rat], var: &str, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let mut first = true;
    for (k, x) in c.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        let neg = x.is_negative();
        let a = x.abs();
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if neg { '-' } else { '+' })?;
        }
        first = false;
        let mono = match k {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{k}"),
        };
        if mono.is_empty() {
            write!(f, "{}", fmt_rat(&a))?;
        } else if a.is_one() {
            write!(f, "{mono}")?;
        } else {
            write!(f, "{}{}", fmt_rat(&a), mono)?;
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_terms(&self.c, "t", f)
    }
}

/// Quotient `num / den` of polynomials.
#[derive(Clone, Debug)]
pub struct RatFunc {
    pub num: Poly,
    pub den: Poly,
}

impl PartialEq for RatFunc {
    fn eq(&self, o: &Self) -> bool {
        &self.num * &o.den == &o.num * &self.den
    }
}

impl Eq for RatFunc {}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        RatFunc { num, den }
    }

    pub fn poly(p: Poly) -> Self {
        RatFunc { num: p, den: Poly::one() }
    }

    /// `num / prod_k (1 - t^k)`
    pub fn with_cyclotomic_den(num: Poly, ks: &[usize]) -> Self {
        let den = ks.iter().fold(Poly::one(), |acc, &k| &acc * &Poly::one_minus_t_pow(k));
        RatFunc::new(num, den)
    }

    /// Cancels common factors; the denominator is scaled so its lowest
    /// nonzero coefficient is one.
    pub fn reduced(&self) -> Self {
        let g = Poly::gcd(&self.num, &self.den);
        let (mut n, mut d) = if g.is_zero() || g.degree() == Some(0) {
            (self.num.clone(), self.den.clone())
        } else {
            (self.num.divrem(&g).0, self.den.divrem(&g).0)
        };
        if n.is_zero() {
            return RatFunc::poly(Poly::zero());
        }
        let v = d.valuation().unwrap();
        let s = d.coeff(v).recip();
        n = n.scale(&s);
        d = d.scale(&s);
        RatFunc { num: n, den: d }
    }

    /// The polynomial this function equals, if any.
    pub fn as_polynomial(&self) -> Option<Poly> {
        self.num.div_exact(&self.den)
    }

    pub fn is_polynomial(&self) -> bool {
        self.as_polynomial().is_some()
    }

    /// First `n` power series coefficients; requires `den(0) != 0`.
    pub fn series(&self, n: usize) -> Vec<Rat> {
        let d0 = self.den.coeff(0);
        assert!(!d0.is_zero(), "series expansion needs a nonzero constant term in the denominator");
        let inv = d0.recip();
        let dc = self.den.coeffs();
        let mut out: Vec<Rat> = Vec::with_capacity(n);
        for k in 0..n {
            let mut v = self.num.coeff(k);
            for j in 1..dc.len().min(k + 1) {
                v -= &dc[j] * &out[k - j];
            }
            out.push(v * &inv);
        }
        out
    }

    pub fn subs_power(&self, k: usize) -> Self {
        RatFunc { num: self.num.subs_power(k), den: self.den.subs_power(k) }
    }

    pub fn mul_poly(&self, p: &Poly) -> Self {
        RatFunc { num: &self.num * p, den: self.den.clone() }
    }

    /// `t^k f(1/t)`; `k` may be negative.
    pub fn reciprocal_times_power(&self, k: i64) -> Self {
        let dn = self.num.degree().unwrap_or(0) as i64;
        let dd = self.den.degree().unwrap_or(0) as i64;
        let e = dd - dn + k;
        let (mut num, mut den) = (self.num.reversed(), self.den.reversed());
        if e >= 0 {
            num = num.shift(e as usize);
        } else {
            den = den.shift((-e) as usize);
        }
        RatFunc::new(num, den)
    }

    pub fn scale(&self, k: &Rat) -> Self {
        RatFunc { num: self.num.scale(k), den: self.den.clone() }
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, o: &RatFunc) -> RatFunc {
        if self.den == o.den {
            return RatFunc::new(&self.num + &o.num, self.den.clone());
        }
        RatFunc::new(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den)
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, o: &RatFunc) -> RatFunc {
        if self.den == o.den {
            return RatFunc::new(&self.num - &o.num, self.den.clone());
        }
        RatFunc::new(&(&self.num * &o.den) - &(&o.num * &self.den), &self.den * &o.den)
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, o: &RatFunc) -> RatFunc {
        RatFunc::new(&self.num * &o.num, &self.den * &o.den)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == Poly::one() {
            return write!(f, "{}", self.num);
        }
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

/// Polynomial in a fractional variable `t^(1/n)`; coefficient `j` sits at
/// exponent `j/n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FracPoly {
    pub n: usize,
    pub poly: Poly,
}

impl fmt::Display for FracPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n == 1 {
            return write!(f, "{}", self.poly);
        }
        fmt_terms(self.poly.coeffs(), &format!("t^(1/{})", self.n), f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_and_gcd() {
        let a = Poly::from_ints(&[1, 0, -1]);
        let b = Poly::from_ints(&[1, 1]);
        assert_eq!(a.div_exact(&b).unwrap(), Poly::from_ints(&[1, -1]));
        assert_eq!(Poly::gcd(&a, &Poly::from_ints(&[-1, 1])), Poly::from_ints(&[-1, 1]));
    }

    #[test]
    fn series_of_geometric() {
        let f = RatFunc::with_cyclotomic_den(Poly::one(), &[1]);
        assert_eq!(f.series(4), vec![rat(1); 4]);
        let g = RatFunc::with_cyclotomic_den(Poly::from_ints(&[1, 1]), &[1, 1]);
        assert_eq!(g.series(4), vec![rat(1), rat(3), rat(5), rat(7)]);
    }

    #[test]
    fn reduction_detects_polynomials() {
        let f = RatFunc::new(Poly::from_ints(&[1, 0, 0, -1]), Poly::one_minus_t_pow(1));
        assert_eq!(f.as_polynomial().unwrap(), Poly::from_ints(&[1, 1, 1]));
        let g = RatFunc::new(Poly::from_ints(&[1, 0, 1]), Poly::from_ints(&[1, 1]));
        assert!(!g.is_polynomial());
    }

    #[test]
    fn display() {
        assert_eq!(Poly::from_ints(&[1, -2, 0, 1]).to_string(), "1 - 2t + t^3");
    }
}
