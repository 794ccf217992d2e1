//! Exact arithmetic in the real cyclotomic field `Q(ζ)`, `ζ = 2cos(π/N)`.
//!
//! An element is stored as an integer polynomial in `ζ` of degree below the
//! field degree, divided by a single positive denominator. The polynomial is
//! reduced modulo the minimal polynomial of `ζ` and the numerator content is
//! coprime to the denominator, so equal elements have equal representations.
//!
//! Signs are decided by evaluating the polynomial on a certified dyadic
//! enclosure of `ζ`, doubling the precision until the enclosure of the value
//! excludes zero. No floating point value enters a decision.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::label::Label;

/// Precision, in bits, of the enclosure of `ζ` built with every field.
pub const BASE_PRECISION: u32 = 64;

/// Largest field degree accepted by [`Field::new`].
pub const MAX_DEGREE: usize = 512;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("2cos(pi/{label}) does not lie in Q(2cos(pi/{conductor}))")]
    LabelNotInField { label: u32, conductor: u64 },
    #[error("conductor {conductor} gives a field of degree {degree}, above the limit {MAX_DEGREE}")]
    FieldTooLarge { conductor: u64, degree: usize },
    #[error("invalid conductor {0}")]
    InvalidConductor(u64),
}

/// The field `Q(2cos(π/N))` together with a certified enclosure of its
/// generator.
#[derive(Debug, Clone)]
pub struct Field {
    conductor: u64,
    /// Monic, lowest degree first.
    minpoly: Vec<BigInt>,
    base: Enclosure,
}

/// `ζ ∈ [lo, hi] / 2^bits` with `hi - lo <= 1`, plus bounds on its powers.
#[derive(Debug, Clone)]
struct Enclosure {
    bits: u32,
    lo: BigInt,
    hi: BigInt,
    pow_lo: Vec<BigInt>,
    pow_hi: Vec<BigInt>,
}

/// An element of a [`Field`].
///
/// Scalars do not carry their field; arithmetic that needs the minimal
/// polynomial goes through [`Field`] methods, while addition, subtraction and
/// negation are plain operator impls.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    num: Vec<BigInt>,
    den: BigInt,
}

impl Field {
    /// The field generated by `2cos(π/conductor)`.
    pub fn new(conductor: u64) -> Result<Field, ScalarError> {
        if conductor == 0 {
            return Err(ScalarError::InvalidConductor(0));
        }
        let minpoly = minimal_polynomial_of_two_cos(conductor)?;
        let degree = minpoly.len() - 1;
        let base = if degree == 1 {
            // ζ is rational; the enclosure is never consulted.
            Enclosure {
                bits: 0,
                lo: -&minpoly[0],
                hi: -&minpoly[0],
                pow_lo: vec![],
                pow_hi: vec![],
            }
        } else {
            Enclosure::coarse(conductor, &minpoly).refined(&minpoly, BASE_PRECISION)
        };
        Ok(Field {
            conductor,
            minpoly,
            base,
        })
    }

    /// The smallest field of this family holding `cos(π/m)` for every label,
    /// i.e. conductor `lcm(labels ∪ {1})`.
    pub fn for_labels<I: IntoIterator<Item = u32>>(labels: I) -> Result<Field, ScalarError> {
        let conductor = labels
            .into_iter()
            .filter(|&m| m > 0)
            .fold(1u64, |acc, m| acc.lcm(&(m as u64)));
        Field::new(conductor)
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn degree(&self) -> usize {
        self.minpoly.len() - 1
    }

    /// Coefficients of the minimal polynomial of `ζ`, lowest degree first.
    pub fn minimal_polynomial(&self) -> &[BigInt] {
        &self.minpoly
    }

    pub fn zero(&self) -> Scalar {
        Scalar {
            num: vec![BigInt::zero(); self.degree()],
            den: BigInt::one(),
        }
    }

    pub fn one(&self) -> Scalar {
        self.int(1)
    }

    pub fn int(&self, k: i64) -> Scalar {
        let mut s = self.zero();
        s.num[0] = BigInt::from(k);
        s.normalize();
        s
    }

    pub fn rational(&self, q: &BigRational) -> Scalar {
        let mut s = self.zero();
        s.num[0] = q.numer().clone();
        s.den = q.denom().clone();
        s.normalize();
        s
    }

    /// The generator `ζ = 2cos(π/N)`.
    pub fn zeta(&self) -> Scalar {
        let mut coeffs = vec![BigInt::zero(); self.degree().max(2)];
        coeffs[1] = BigInt::one();
        self.reduce(&mut coeffs);
        Scalar::from_parts(coeffs, BigInt::one())
    }

    /// Builds an element from rational coefficients of `1, ζ, ζ², …`.
    /// Extra coefficients are reduced modulo the minimal polynomial.
    pub fn from_coefficients(&self, coeffs: &[BigRational]) -> Scalar {
        let den = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut num: Vec<BigInt> = coeffs.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        num.resize(num.len().max(self.degree()), BigInt::zero());
        self.reduce(&mut num);
        Scalar::from_parts(num, den)
    }

    /// `2cos(π/m)`, obtained from `ζ` by the angle-multiplication recurrence
    /// `D₀ = 2, D₁ = ζ, D_k = ζ·D_{k-1} - D_{k-2}`, where `D_k = 2cos(kπ/N)`.
    pub fn two_cos_pi_over(&self, m: u32) -> Result<Scalar, ScalarError> {
        match m {
            0 => Err(ScalarError::LabelNotInField {
                label: 0,
                conductor: self.conductor,
            }),
            1 => Ok(self.int(-2)),
            2 => Ok(self.zero()),
            _ if !self.conductor.is_multiple_of(m as u64) => Err(ScalarError::LabelNotInField {
                label: m,
                conductor: self.conductor,
            }),
            _ => {
                let steps = self.conductor / m as u64;
                let zeta = self.zeta();
                let mut prev = self.int(2);
                let mut cur = zeta.clone();
                for _ in 1..steps {
                    let next = &self.mul(&zeta, &cur) - &prev;
                    prev = cur;
                    cur = next;
                }
                Ok(cur)
            }
        }
    }

    /// The Gram matrix entry `-cos(π/m)` for a label; `-1` for an infinite
    /// bond.
    pub fn cos_embed(&self, label: Label) -> Result<Scalar, ScalarError> {
        match label {
            Label::Infinite => Ok(self.int(-1)),
            Label::Finite(m) => Ok(self.two_cos_pi_over(m)?.neg().halve()),
        }
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        let d = self.degree();
        if a.is_zero() || b.is_zero() {
            return self.zero();
        }
        let mut prod = vec![BigInt::zero(); 2 * d - 1];
        for (i, x) in a.num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.num.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        self.reduce(&mut prod);
        Scalar::from_parts(prod, &a.den * &b.den)
    }

    pub fn inv(&self, a: &Scalar) -> Result<Scalar, ScalarError> {
        if a.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        if self.degree() == 1 {
            return Ok(Scalar::from_parts(vec![a.den.clone()], a.num[0].clone()));
        }
        // Solve M·x = e₀ for the matrix M of multiplication by the numerator.
        let d = self.degree();
        let mut column = a.num.clone();
        let mut rows = vec![vec![BigInt::zero(); d + 1]; d];
        for j in 0..d {
            for (row, c) in rows.iter_mut().zip(&column) {
                row[j] = c.clone();
            }
            column.insert(0, BigInt::zero());
            self.reduce(&mut column);
        }
        rows[0][d] = BigInt::one();
        let (x, det) = bareiss_solve(rows);
        // a = p/den, so 1/a = den · x / det.
        Ok(Scalar::from_parts(x.into_iter().map(|c| c * &a.den).collect(), det))
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Result<Scalar, ScalarError> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// Exact sign of an element.
    pub fn sign(&self, a: &Scalar) -> Ordering {
        if a.is_zero() {
            return Ordering::Equal;
        }
        if self.degree() == 1 {
            return a.num[0].sign_ordering();
        }
        if let Some(s) = self.base.sign_of(a) {
            return s;
        }
        let mut enclosure = self.base.refined(&self.minpoly, 2 * self.base.bits);
        loop {
            if let Some(s) = enclosure.sign_of(a) {
                return s;
            }
            enclosure = enclosure.refined(&self.minpoly, 2 * enclosure.bits);
        }
    }

    /// Sign of `a - b`.
    pub fn cmp(&self, a: &Scalar, b: &Scalar) -> Ordering {
        self.sign(&(a - b))
    }

    /// Certified dyadic enclosure `[lo, hi] / 2^bits` of `ζ` at the requested
    /// precision. For rational `ζ` both ends equal `ζ · 2^bits`.
    pub fn zeta_enclosure(&self, bits: u32) -> (BigInt, BigInt) {
        if self.degree() == 1 {
            let z = &self.base.lo << bits;
            return (z.clone(), z);
        }
        let e = if bits <= self.base.bits {
            self.base.clone()
        } else {
            self.base.refined(&self.minpoly, bits)
        };
        let shift = e.bits - bits;
        (&e.lo >> shift, (&e.hi + ((BigInt::one() << shift) - 1u32)) >> shift)
    }

    /// Reduces an integer polynomial modulo the monic minimal polynomial and
    /// truncates it to the field degree.
    fn reduce(&self, poly: &mut Vec<BigInt>) {
        let d = self.degree();
        for k in (d..poly.len()).rev() {
            if poly[k].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut poly[k]);
            for i in 0..d {
                if !self.minpoly[i].is_zero() {
                    poly[k - d + i] -= &c * &self.minpoly[i];
                }
            }
        }
        poly.truncate(d);
        poly.resize(d, BigInt::zero());
    }
}

trait SignOrdering {
    fn sign_ordering(&self) -> Ordering;
}

impl SignOrdering for BigInt {
    fn sign_ordering(&self) -> Ordering {
        self.cmp(&BigInt::zero())
    }
}

impl Enclosure {
    /// Enclosure of the largest real root of the minimal polynomial, which is
    /// `2cos(π/N)`; the other roots are `2cos(kπ/N)` for odd `k ≥ 3`. The
    /// approximate value only selects the bracket; the bracket itself is
    /// checked exactly by a sign change.
    fn coarse(conductor: u64, minpoly: &[BigInt]) -> Enclosure {
        const BITS: u32 = 40;
        let n = conductor as f64;
        let approx = 2.0 * (std::f64::consts::PI / n).cos();
        let gap = approx - 2.0 * (3.0 * std::f64::consts::PI / n).cos();
        let radius = 1e-9;
        assert!(
            gap > 8.0 * radius,
            "roots of the minimal polynomial for N = {conductor} are too close to separate"
        );
        let scale = (1u64 << BITS) as f64;
        let lo = BigInt::from(((approx - radius) * scale).floor() as i64);
        let hi = BigInt::from(((approx + radius) * scale).ceil() as i64);
        let s_lo = eval_dyadic_sign(minpoly, &lo, BITS);
        let s_hi = eval_dyadic_sign(minpoly, &hi, BITS);
        assert!(
            s_lo != s_hi && s_lo != Ordering::Equal && s_hi != Ordering::Equal,
            "coarse enclosure of 2cos(pi/{conductor}) failed to bracket a root"
        );
        Enclosure {
            bits: BITS,
            lo,
            hi,
            pow_lo: vec![],
            pow_hi: vec![],
        }
    }

    /// Bisects down to width `2^-bits` and tabulates power bounds.
    fn refined(&self, minpoly: &[BigInt], bits: u32) -> Enclosure {
        let bits = bits.max(self.bits);
        let shift = bits - self.bits;
        let mut lo = &self.lo << shift;
        let mut hi = &self.hi << shift;
        let s_lo = eval_dyadic_sign(minpoly, &lo, bits);
        while &hi - &lo > BigInt::one() {
            let mid: BigInt = (&lo + &hi) >> 1u32;
            let s_mid = eval_dyadic_sign(minpoly, &mid, bits);
            debug_assert!(s_mid != Ordering::Equal, "irreducible polynomial has a dyadic root");
            if s_mid == s_lo {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let d = minpoly.len() - 1;
        let one = BigInt::one() << bits;
        let mut pow_lo = vec![one.clone()];
        let mut pow_hi = vec![one];
        // ζ > 0 whenever the degree exceeds one, so bounds multiply monotonically.
        for i in 1..d {
            pow_lo.push((&pow_lo[i - 1] * &lo) >> bits);
            let up = &pow_hi[i - 1] * &hi;
            pow_hi.push((up + ((BigInt::one() << bits) - 1u32)) >> bits);
        }
        Enclosure {
            bits,
            lo,
            hi,
            pow_lo,
            pow_hi,
        }
    }

    fn sign_of(&self, a: &Scalar) -> Option<Ordering> {
        let mut lower = BigInt::zero();
        let mut upper = BigInt::zero();
        for (i, c) in a.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if c.is_positive() {
                lower += c * &self.pow_lo[i];
                upper += c * &self.pow_hi[i];
            } else {
                lower += c * &self.pow_hi[i];
                upper += c * &self.pow_lo[i];
            }
        }
        if lower.is_positive() {
            Some(Ordering::Greater)
        } else if upper.is_negative() {
            Some(Ordering::Less)
        } else {
            None
        }
    }
}

/// Sign of `p(x / 2^bits)` for an integer polynomial `p`.
fn eval_dyadic_sign(p: &[BigInt], x: &BigInt, bits: u32) -> Ordering {
    // Horner on 2^(bits·deg) · p(x / 2^bits).
    let d = p.len() - 1;
    let mut acc = p[d].clone();
    for i in (0..d).rev() {
        acc = acc * x + (&p[i] << (bits as usize * (d - i)));
    }
    acc.sign_ordering()
}

/// Minimal polynomial of `2cos(π/N)` over the rationals.
///
/// For `N ≥ 2` this is the polynomial `g` with `z^k·g(z + 1/z) = Φ_{2N}(z)`,
/// where `Φ_{2N}` is the cyclotomic polynomial of degree `2k`.
pub(crate) fn minimal_polynomial_of_two_cos(n: u64) -> Result<Vec<BigInt>, ScalarError> {
    if n == 1 {
        // 2cos(π) = -2
        return Ok(vec![BigInt::from(2), BigInt::one()]);
    }
    let order = 2 * n;
    let degree = (euler_phi(order) / 2) as usize;
    if degree > MAX_DEGREE {
        return Err(ScalarError::FieldTooLarge { conductor: n, degree });
    }
    let cyclo = cyclotomic_polynomial(order);
    let k = (cyclo.len() - 1) / 2;
    // Dickson-type polynomials D_j(x) = z^j + z^{-j} with x = z + 1/z.
    let mut result = vec![BigInt::zero(); k + 1];
    result[0] = cyclo[k].clone();
    let mut d_prev: Vec<BigInt> = vec![BigInt::from(2)];
    let mut d_cur: Vec<BigInt> = vec![BigInt::zero(), BigInt::one()];
    for j in 1..=k {
        let a = &cyclo[k + j];
        if !a.is_zero() {
            for (i, c) in d_cur.iter().enumerate() {
                result[i] += a * c;
            }
        }
        let mut next = vec![BigInt::zero(); d_cur.len() + 1];
        for (i, c) in d_cur.iter().enumerate() {
            next[i + 1] += c;
        }
        for (i, c) in d_prev.iter().enumerate() {
            next[i] -= c;
        }
        d_prev = std::mem::replace(&mut d_cur, next);
    }
    Ok(result)
}

fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

fn mobius(mut n: u64) -> i8 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// `Φ_n(z) = ∏_{d | n} (z^d - 1)^{μ(n/d)}`, lowest degree first.
pub(crate) fn cyclotomic_polynomial(n: u64) -> Vec<BigInt> {
    let mut numer = vec![BigInt::one()];
    let mut denom = vec![BigInt::one()];
    for d in (1..=n).filter(|d| n.is_multiple_of(*d)) {
        let factor = {
            let mut f = vec![BigInt::zero(); d as usize + 1];
            f[0] = BigInt::from(-1);
            f[d as usize] = BigInt::one();
            f
        };
        match mobius(n / d) {
            1 => numer = int_poly_mul(&numer, &factor),
            -1 => denom = int_poly_mul(&denom, &factor),
            _ => {}
        }
    }
    int_poly_div_exact(&numer, &denom)
}

fn int_poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Quotient of `a` by a monic-up-to-sign divisor `b` that divides it exactly.
fn int_poly_div_exact(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let lead = &b[db];
    let mut rem = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - db];
    for k in (0..q.len()).rev() {
        let c = &rem[k + db] / lead;
        if !c.is_zero() {
            for (i, bi) in b.iter().enumerate() {
                rem[k + i] -= &c * bi;
            }
        }
        q[k] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    q
}

/// Fraction-free elimination on an augmented `d × (d+1)` integer system with
/// a nonsingular left block. Returns `(x, D)` with `x / D` the solution.
fn bareiss_solve(mut m: Vec<Vec<BigInt>>) -> (Vec<BigInt>, BigInt) {
    let d = m.len();
    let mut prev = BigInt::one();
    for k in 0..d {
        let pivot = (k..d)
            .find(|&r| !m[r][k].is_zero())
            .expect("multiplication matrix of a nonzero element is invertible");
        m.swap(k, pivot);
        for i in k + 1..d {
            for j in k + 1..=d {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let det = prev;
    let mut x = vec![BigInt::zero(); d];
    for i in (0..d).rev() {
        let mut acc = &det * &m[i][d];
        for j in i + 1..d {
            acc -= &m[i][j] * &x[j];
        }
        x[i] = acc / &m[i][i];
    }
    (x, det)
}

impl Scalar {
    fn from_parts(num: Vec<BigInt>, den: BigInt) -> Scalar {
        let mut s = Scalar { num, den };
        s.normalize();
        s
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -std::mem::take(&mut self.den);
            for c in &mut self.num {
                *c = -std::mem::take(c);
            }
        }
        if self.num.iter().all(Zero::is_zero) {
            self.den = BigInt::one();
            return;
        }
        if self.den.is_one() {
            return;
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                return;
            }
            if !c.is_zero() {
                g = g.gcd(c);
            }
        }
        if !g.is_one() {
            self.den /= &g;
            for c in &mut self.num {
                *c /= &g;
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.num.iter().skip(1).all(Zero::is_zero)
    }

    pub fn degree_bound(&self) -> usize {
        self.num.len()
    }

    /// Rational coefficients of `1, ζ, ζ², …`.
    pub fn coefficients(&self) -> Vec<BigRational> {
        self.num
            .iter()
            .map(|c| BigRational::new(c.clone(), self.den.clone()))
            .collect()
    }

    pub fn numerators(&self) -> &[BigInt] {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn scale(&self, k: &BigInt) -> Scalar {
        Scalar::from_parts(self.num.iter().map(|c| c * k).collect(), self.den.clone())
    }

    pub fn double(&self) -> Scalar {
        self.scale(&BigInt::from(2))
    }

    pub fn halve(&self) -> Scalar {
        Scalar::from_parts(self.num.clone(), &self.den * 2)
    }

    /// Coefficients rendered as `p/q` strings, for serialization.
    pub fn to_strings(&self) -> Vec<String> {
        self.coefficients().iter().map(|c| c.to_string()).collect()
    }
}

impl Add for &Scalar {
    type Output = Scalar;

    fn add(self, rhs: &Scalar) -> Scalar {
        debug_assert_eq!(self.num.len(), rhs.num.len());
        if self.den == rhs.den {
            let num = self.num.iter().zip(&rhs.num).map(|(a, b)| a + b).collect();
            return Scalar::from_parts(num, self.den.clone());
        }
        let num = self
            .num
            .iter()
            .zip(&rhs.num)
            .map(|(a, b)| a * &rhs.den + b * &self.den)
            .collect();
        Scalar::from_parts(num, &self.den * &rhs.den)
    }
}

impl Sub for &Scalar {
    type Output = Scalar;

    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        Scalar {
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;

    fn neg(mut self) -> Scalar {
        for c in &mut self.num {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coefficients().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mono = match i {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{i}"),
            };
            if i == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                f.write_str(&mono)?;
            } else {
                write!(f, "{mag}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl serde::Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({self})")
    }
}
