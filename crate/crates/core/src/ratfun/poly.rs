//! Dense polynomials with exact rational coefficients.
//!
//! Coefficients are stored in ascending powers of `s`. The zero polynomial
//! is the empty coefficient vector; otherwise the leading coefficient is
//! nonzero.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use num_complex::Complex64;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Parse a decimal literal (e.g. `-.7`, `1.6`, `2e-3`) or a fraction
/// (`1128/1051`) into an exact rational.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    let text = text.trim();
    if let Some((num, den)) = text.split_once('/') {
        let n: BigInt = num.trim().parse().ok()?;
        let d: BigInt = den.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(BigRational::new(n, d));
    }
    let (mantissa, exp) = match text.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i32>().ok()?),
        None => (text, 0),
    };
    let (sign, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = match digits.split_once('.') {
        Some((i, f)) => (i, f),
        None => (digits, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().all(|c| c.is_ascii_digit())
        || !frac_part.chars().all(|c| c.is_ascii_digit())
    {
        return None;
    }
    let joined = format!("{int_part}{frac_part}");
    let mantissa_int: BigInt = if joined.is_empty() {
        BigInt::zero()
    } else {
        joined.parse().ok()?
    };
    let shift = exp - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let value = if shift >= 0 {
        BigRational::from(mantissa_int * ten.pow(shift as u32))
    } else {
        BigRational::new(mantissa_int, ten.pow((-shift) as u32))
    };
    Some(value * BigRational::from_integer(BigInt::from(sign)))
}

/// Render a rational as `p/q` (or just `p` when the denominator is 1).
pub fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// A real-coefficient polynomial in the Laplace variable `s`.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    coeffs: Vec<BigRational>,
}

impl Polynomial {
    /// Build from ascending-power coefficients; trailing zeros are trimmed.
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Polynomial::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Polynomial::new(vec![c])
    }

    pub fn from_i64(c: i64) -> Self {
        Polynomial::constant(BigRational::from_integer(BigInt::from(c)))
    }

    /// The monomial `s`.
    pub fn variable() -> Self {
        Polynomial::new(vec![BigRational::zero(), BigRational::one()])
    }

    /// `s + c` for rational `c`.
    pub fn linear(c: BigRational) -> Self {
        Polynomial::new(vec![c, BigRational::one()])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Coefficient of `s^k` (zero beyond the stored degree).
    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree of the polynomial; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().is_some_and(|c| c.is_one())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Divide by the leading coefficient, making the polynomial monic.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            None => Polynomial::zero(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Polynomial::zero();
        }
        Polynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigRational::from_integer(BigInt::from(k)))
                .collect(),
        )
    }

    /// Exact evaluation at a rational point (Horner).
    pub fn eval_rational(&self, z: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    /// Floating-point evaluation at a complex point (Horner).
    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * z + rational_to_f64(c);
        }
        acc
    }

    /// Coefficients converted to f64, ascending powers.
    pub fn to_f64_coeffs(&self) -> Vec<f64> {
        self.coeffs.iter().map(rational_to_f64).collect()
    }

    /// Euclidean division: returns `(quotient, remainder)` with
    /// `self = quotient * divisor + remainder` and
    /// `deg(remainder) < deg(divisor)`.
    pub fn div_rem(&self, divisor: &Polynomial) -> (Polynomial, Polynomial) {
        let d_deg = divisor.degree().expect("division by zero polynomial");
        let d_lc = divisor.leading_coeff().unwrap().clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= d_deg {
            return (Polynomial::zero(), self.clone());
        }
        let q_len = rem.len() - d_deg;
        let mut quot = vec![BigRational::zero(); q_len];
        for k in (0..q_len).rev() {
            let c = &rem[k + d_deg] / &d_lc;
            if c.is_zero() {
                continue;
            }
            for (j, dj) in divisor.coeffs.iter().enumerate() {
                let t = dj * &c;
                rem[k + j] -= t;
            }
            quot[k] = c;
        }
        (Polynomial::new(quot), Polynomial::new(rem))
    }

    /// Monic greatest common divisor via the Euclidean algorithm.
    pub fn gcd(&self, other: &Polynomial) -> Polynomial {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `self^k` by repeated squaring.
    pub fn pow(&self, mut k: u32) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Polynomial::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        acc
    }

    /// Square-free decomposition (Yun's algorithm): returns `(factor,
    /// multiplicity)` pairs with each factor monic and square-free, so that
    /// the product of `factor^multiplicity` equals `self` up to a constant.
    pub fn square_free_factors(&self) -> Vec<(Polynomial, usize)> {
        if self.degree().is_none_or(|d| d == 0) {
            return vec![];
        }
        let p = self.monic();
        let dp = p.derivative();
        let g = p.gcd(&dp);
        if g.degree() == Some(0) {
            return vec![(p, 1)];
        }
        let (mut w, _) = p.div_rem(&g);
        let (mut y, _) = dp.div_rem(&g);
        let mut out = Vec::new();
        let mut mult = 1usize;
        loop {
            let z = &y - &w.derivative();
            if z.is_zero() {
                if w.degree().is_some_and(|d| d > 0) {
                    out.push((w.monic(), mult));
                }
                break;
            }
            let f = w.gcd(&z);
            if f.degree().is_some_and(|d| d > 0) {
                out.push((f.clone(), mult));
            }
            let (w2, _) = w.div_rem(&f);
            let (y2, _) = z.div_rem(&f);
            w = w2;
            y = y2;
            mult += 1;
        }
        out
    }
}

fn rational_to_f64(r: &BigRational) -> f64 {
    // num's ToPrimitive on BigRational is exact-ish for moderate sizes but
    // can overflow for huge numerators; fall back to a string round-trip.
    use num::ToPrimitive;
    r.to_f64().unwrap_or_else(|| {
        let n = r.numer().to_string().parse::<f64>().unwrap_or(f64::NAN);
        let d = r.denom().to_string().parse::<f64>().unwrap_or(f64::NAN);
        n / d
    })
}

/// Exact rational-to-f64 helper shared across the crate.
pub fn to_f64(r: &BigRational) -> f64 {
    rational_to_f64(r)
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect();
        Polynomial::new(coeffs)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect();
        Polynomial::new(coeffs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Polynomial::new(coeffs)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let show_coeff = k == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{}", format_rational(&mag))?;
            }
            if k > 0 {
                if show_coeff {
                    write!(f, "*")?;
                }
                if k == 1 {
                    write!(f, "s")?;
                } else {
                    write!(f, "s^{k}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}
