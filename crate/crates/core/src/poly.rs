//! Exact Laurent polynomials in one variable `t` over the integers.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::{self, Write};
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// `Σ coeffs[k] · t^(low + k)`, stored without leading or trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentPolynomial {
    low: i64,
    coeffs: Vec<BigInt>,
}

impl LaurentPolynomial {
    pub fn zero() -> Self {
        Self { low: 0, coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// `c · t^e`.
    pub fn monomial(c: i64, e: i64) -> Self {
        Self::from_big(e, alloc::vec![BigInt::from(c)])
    }

    pub fn t() -> Self {
        Self::monomial(1, 1)
    }

    /// Coefficients of `t^low, t^(low+1), …`.
    pub fn from_coeffs(low: i64, coeffs: &[i64]) -> Self {
        Self::from_big(low, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn from_big(low: i64, coeffs: Vec<BigInt>) -> Self {
        let mut p = Self { low, coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.low += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.low = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Lowest exponent with a nonzero coefficient (0 for the zero polynomial).
    pub fn low_degree(&self) -> i64 {
        self.low
    }

    pub fn high_degree(&self) -> i64 {
        self.low + self.coeffs.len() as i64 - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, e: i64) -> BigInt {
        let k = e - self.low;
        if k < 0 || k >= self.coeffs.len() as i64 {
            BigInt::zero()
        } else {
            self.coeffs[k as usize].clone()
        }
    }

    /// Multiplication by `t^e`.
    pub fn shift(&self, e: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Self { low: self.low + e, coeffs: self.coeffs.clone() }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::from_big(self.low, self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Value at `t = 1`.
    pub fn eval_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// Value at `t = -1`.
    pub fn eval_minus_one(&self) -> BigInt {
        let mut acc = BigInt::zero();
        for (k, c) in self.coeffs.iter().enumerate() {
            if (self.low + k as i64).rem_euclid(2) == 0 {
                acc += c;
            } else {
                acc -= c;
            }
        }
        acc
    }

    /// Exact quotient `self / divisor`, or `None` if the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        // Ordinary polynomial long division on the normalized coefficient vectors.
        let d = &divisor.coeffs;
        let dl = d.len();
        let lead = &d[dl - 1];
        let mut rem = self.coeffs.clone();
        if rem.len() < dl {
            return None;
        }
        let qlen = rem.len() - dl + 1;
        let mut q = alloc::vec![BigInt::zero(); qlen];
        for k in (0..qlen).rev() {
            let top = &rem[k + dl - 1];
            if top.is_zero() {
                continue;
            }
            if !(top % lead).is_zero() {
                return None;
            }
            let c = top / lead;
            for (m, dc) in d.iter().enumerate() {
                rem[k + m] -= &c * dc;
            }
            q[k] = c;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::from_big(self.low - divisor.low, q))
    }

    /// Representative of `±t^j · self` with lowest exponent 0 and positive
    /// lowest coefficient. The zero polynomial is its own canonical form.
    pub fn canonical(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let p = Self { low: 0, coeffs: self.coeffs.clone() };
        if p.coeffs[0].is_negative() {
            -p
        } else {
            p
        }
    }

    /// True iff `self = ±t^j · other` for some integer `j`.
    pub fn eq_up_to_units(&self, other: &Self) -> bool {
        self.canonical() == other.canonical()
    }

    /// `t ↦ t^{-1}`.
    pub fn conjugate(&self) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Self::from_big(-self.high_degree(), coeffs)
    }

    /// Canonical coefficient list, lowest degree first, as text: `[1,-1,1]`.
    pub fn coefficient_string(&self) -> String {
        let c = self.canonical();
        let mut s = String::from("[");
        for (k, x) in c.coeffs.iter().enumerate() {
            if k > 0 {
                s.push(',');
            }
            let _ = write!(s, "{x}");
        }
        s.push(']');
        s
    }
}

impl Default for LaurentPolynomial {
    fn default() -> Self {
        Self::zero()
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let e = self.low + k as i64;
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            first = false;
            match (mag.is_one(), e) {
                (_, 0) => write!(f, "{mag}")?,
                (true, 1) => f.write_str("t")?,
                (true, _) => write!(f, "t^{e}")?,
                (false, 1) => write!(f, "{mag}t")?,
                (false, _) => write!(f, "{mag}t^{e}")?,
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a LaurentPolynomial> for &'a LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn add(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let low = self.low.min(rhs.low);
        let high = self.high_degree().max(rhs.high_degree());
        let mut coeffs = alloc::vec![BigInt::zero(); (high - low + 1) as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[(self.low - low) as usize + k] += c;
        }
        for (k, c) in rhs.coeffs.iter().enumerate() {
            coeffs[(rhs.low - low) as usize + k] += c;
        }
        LaurentPolynomial::from_big(low, coeffs)
    }
}

impl<'a> Sub<&'a LaurentPolynomial> for &'a LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn sub(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a LaurentPolynomial> for &'a LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn mul(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPolynomial::zero();
        }
        let mut coeffs = alloc::vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (a, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (b, y) in rhs.coeffs.iter().enumerate() {
                coeffs[a + b] += x * y;
            }
        }
        LaurentPolynomial::from_big(self.low + rhs.low, coeffs)
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        LaurentPolynomial { low: self.low, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        -&self
    }
}

impl Add for LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }
}

impl Sub for LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn sub(self, rhs: Self) -> Self {
        &self - &rhs
    }
}

impl Mul for LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

/// Square matrix over Laurent polynomials.
pub type PolyMatrix = Vec<Vec<LaurentPolynomial>>;

/// Determinant by fraction-free (Bareiss) elimination; every division is exact.
pub fn determinant(m: &PolyMatrix) -> crate::Result<LaurentPolynomial> {
    let n = m.len();
    if n == 0 {
        return Ok(LaurentPolynomial::one());
    }
    let mut a = m.clone();
    let mut sign = false;
    let mut prev = LaurentPolynomial::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = !sign;
                }
                None => return Ok(LaurentPolynomial::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.div_exact(&prev).ok_or(crate::Error::NonExactDivision)?;
            }
            a[i][k] = LaurentPolynomial::zero();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    Ok(if sign { -d } else { d })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn p(low: i64, c: &[i64]) -> LaurentPolynomial {
        LaurentPolynomial::from_coeffs(low, c)
    }

    #[test]
    fn trimming_and_canonical_form() {
        let a = p(-2, &[0, 0, -1, 1, 0]);
        assert_eq!(a.low_degree(), 0);
        assert_eq!(a.high_degree(), 1);
        assert_eq!(a.canonical(), p(0, &[1, -1]));
        assert!(p(0, &[0, 0]).is_zero());
    }

    #[test]
    fn units() {
        assert!(p(0, &[-1, 1]).eq_up_to_units(&p(0, &[1, -1])));
        assert!(p(0, &[1, -1, 1]).eq_up_to_units(&p(1, &[1, -1, 1])));
        assert!(!p(0, &[-1, 1]).eq_up_to_units(&p(0, &[1, 1])));
        assert!(p(-5, &[3]).eq_up_to_units(&p(2, &[-3])));
    }

    #[test]
    fn arithmetic() {
        let a = p(0, &[1, 1]);
        let b = p(0, &[1, -1, 1]);
        assert_eq!(&a * &b, p(0, &[1, 0, 0, 1]));
        assert_eq!(&(&a * &b).div_exact(&a).unwrap(), &b);
        assert!(p(0, &[1, 0, 1]).div_exact(&a).is_none());
        assert_eq!(&a - &a, LaurentPolynomial::zero());
        assert_eq!(p(-1, &[1, 2]).shift(3), p(2, &[1, 2]));
        assert_eq!(p(-1, &[1, 2, 3]).conjugate(), p(-1, &[3, 2, 1]));
    }

    #[test]
    fn display() {
        assert_eq!(format!("{}", p(0, &[1, -1, 1])), "t^2 - t + 1");
        assert_eq!(format!("{}", p(-1, &[-2, 0, 3])), "3t - 2t^-1");
        assert_eq!(p(3, &[-1, 1]).coefficient_string(), "[1,-1]");
        assert_eq!(LaurentPolynomial::zero().coefficient_string(), "[]");
    }

    #[test]
    fn bareiss_matches_cofactor_expansion() {
        let t = LaurentPolynomial::t();
        let one = LaurentPolynomial::one();
        let m = vec![
            vec![&t - &one, -one.clone(), LaurentPolynomial::zero()],
            vec![t.clone(), &t - &one, one.clone()],
            vec![LaurentPolynomial::zero(), -t.clone(), t.shift(-1)],
        ];
        let expand = |m: &PolyMatrix| {
            let mut acc = LaurentPolynomial::zero();
            for c in 0..3 {
                let minor = |r: usize, col: usize| m[r][col].clone();
                let (c1, c2) = match c {
                    0 => (1, 2),
                    1 => (0, 2),
                    _ => (0, 1),
                };
                let sub = &(&minor(1, c1) * &minor(2, c2)) - &(&minor(1, c2) * &minor(2, c1));
                let term = &m[0][c] * &sub;
                acc = if c == 1 { &acc - &term } else { &acc + &term };
            }
            acc
        };
        assert_eq!(determinant(&m).unwrap(), expand(&m));
        // a pivot of zero forces a row swap
        let swapped = vec![m[1].clone(), m[0].clone(), m[2].clone()];
        let mut zeroed = swapped.clone();
        zeroed[0][0] = LaurentPolynomial::zero();
        assert_eq!(determinant(&swapped).unwrap(), -expand(&m));
        assert_eq!(determinant(&zeroed).unwrap(), expand(&zeroed));
        assert!(determinant(&Vec::new()).unwrap().is_one());
    }
}
