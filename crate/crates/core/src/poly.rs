//! Univariate polynomials over the integers and exact real-root counting.
//!
//! Root counts are decided without floating point: the polynomial is split
//! into multiplicity strata `g_0 = p, g_{i+1} = gcd(g_i, g_i')`, the
//! square-free quotient `g_i / g_{i+1}` carries exactly the roots of
//! multiplicity greater than `i`, and a Sturm chain counts those distinct
//! roots in `(a, +inf)`. Summing over strata gives the count with
//! multiplicity.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub type Rational = BigRational;

/// `num / den` as an exact rational.
pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn integer(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("the zero polynomial has no finite root count")]
    ZeroPolynomial,
    #[error("inexact division: {0}")]
    Inexact(&'static str),
}

/// Coefficients `c_0, c_1, ..., c_d` of `c_0 + c_1 x + ... + c_d x^d`, with
/// no trailing zeros (the zero polynomial has no coefficients).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntegerPolynomial {
    coeffs: Vec<BigInt>,
}

impl fmt::Debug for IntegerPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntegerPolynomial({self})")
    }
}

impl fmt::Display for IntegerPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{mag}x")?,
                (_, true) => write!(f, "x^{k}")?,
                (_, false) => write!(f, "{mag}x^{k}")?,
            }
        }
        Ok(())
    }
}

impl IntegerPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntegerPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntegerPolynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigInt::from(k))
                .collect(),
        )
    }

    /// Positive gcd of the coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// `self / content`, with positive leading coefficient.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.content();
        if self.leading().is_some_and(Signed::is_negative) {
            c = -c;
        }
        Self::new(self.coeffs.iter().map(|x| x / &c).collect())
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        Self::new(
            (0..len)
                .map(|k| self.coeff(k) - other.coeff(k))
                .collect(),
        )
    }

    /// `p(c - x)`.
    pub fn reflect(&self, c: i64) -> Self {
        // Horner in the ring Z[x] with x replaced by (c - x).
        let lin = Self::from_i64(&[c, -1]);
        self.coeffs.iter().rev().fold(Self::zero(), |acc, coef| {
            let mut next = acc.mul(&lin);
            if next.coeffs.is_empty() {
                next.coeffs.push(BigInt::zero());
            }
            next.coeffs[0] += coef;
            Self::new(next.coeffs)
        })
    }

    /// Sign of `p(a)`.
    pub fn sign_at(&self, a: &Rational) -> Ordering {
        // sum c_k num^k den^(d-k) has the sign of p(a) because den > 0.
        let (num, den) = (a.numer(), a.denom());
        let d = match self.degree() {
            Some(d) => d,
            None => return Ordering::Equal,
        };
        let mut total = BigInt::zero();
        let mut num_pow = BigInt::one();
        let mut den_pows = Vec::with_capacity(d + 1);
        let mut dp = BigInt::one();
        for _ in 0..=d {
            den_pows.push(dp.clone());
            dp *= den;
        }
        for (k, c) in self.coeffs.iter().enumerate() {
            total += c * &num_pow * &den_pows[d - k];
            num_pow *= num;
        }
        total.sign_ordering()
    }

    /// Sign of `p(x)` as `x -> +inf`.
    fn sign_at_infinity(&self) -> Ordering {
        self.leading().map_or(Ordering::Equal, |c| c.sign_ordering())
    }

    /// A positive multiple of the remainder of `self` divided by `divisor`.
    fn positive_pseudo_rem(&self, divisor: &Self) -> Self {
        let dd = divisor.degree().expect("nonzero divisor");
        let lc = divisor.leading().expect("nonzero divisor").clone();
        let mut r = self.coeffs.clone();
        let mut flips = 0usize;
        while r.len() > dd && !r.is_empty() {
            let shift = r.len() - 1 - dd;
            let lr = r.last().cloned().expect("nonempty");
            for c in r.iter_mut() {
                *c *= &lc;
            }
            for (k, g) in divisor.coeffs.iter().enumerate() {
                r[k + shift] -= &lr * g;
            }
            if lc.is_negative() {
                flips += 1;
            }
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        let mut rem = Self::new(r);
        if flips % 2 == 1 {
            rem = rem.scale(&BigInt::from(-1));
        }
        let c = rem.content();
        if c > BigInt::one() {
            rem = Self::new(rem.coeffs.iter().map(|x| x / &c).collect());
        }
        rem
    }

    /// Primitive gcd with positive leading coefficient.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut f, mut g) = (self.primitive_part(), other.primitive_part());
        if f.degree() < g.degree() {
            std::mem::swap(&mut f, &mut g);
        }
        while !g.is_zero() {
            let r = f.positive_pseudo_rem(&g).primitive_part();
            f = g;
            g = r;
        }
        f.primitive_part()
    }

    /// Exact quotient `self / divisor` over the integers.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self, PolyError> {
        let dd = divisor
            .degree()
            .ok_or(PolyError::Inexact("division by zero polynomial"))?;
        let lc = divisor.leading().expect("nonzero");
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return if r.is_empty() {
                Ok(Self::zero())
            } else {
                Err(PolyError::Inexact("degree of dividend below divisor"))
            };
        }
        let mut q = vec![BigInt::zero(); r.len() - dd];
        for shift in (0..q.len()).rev() {
            let top = &r[shift + dd];
            let (quot, rem) = top.div_rem(lc);
            if !rem.is_zero() {
                return Err(PolyError::Inexact("leading coefficient does not divide"));
            }
            for (k, g) in divisor.coeffs.iter().enumerate() {
                r[k + shift] -= &quot * g;
            }
            q[shift] = quot;
        }
        if r.iter().any(|c| !c.is_zero()) {
            return Err(PolyError::Inexact("nonzero remainder"));
        }
        Ok(Self::new(q))
    }

    /// The Sturm chain `p, p', -rem(p, p'), ...` with every member rescaled
    /// by a positive factor.
    pub fn sturm_chain(&self) -> Vec<Self> {
        let mut chain = vec![self.clone()];
        let d = self.derivative();
        if d.is_zero() {
            return chain;
        }
        chain.push(d);
        loop {
            let k = chain.len();
            let r = chain[k - 2].positive_pseudo_rem(&chain[k - 1]);
            if r.is_zero() {
                break;
            }
            chain.push(r.scale(&BigInt::from(-1)));
        }
        chain
    }

    /// `g_0 = p, g_1 = gcd(p, p'), ...` down to a constant, primitive.
    pub fn multiplicity_strata(&self) -> Vec<Self> {
        let mut strata = vec![self.primitive_part()];
        loop {
            let last = strata.last().expect("nonempty");
            if last.degree().unwrap_or(0) == 0 {
                break;
            }
            let next = last.gcd(&last.derivative());
            strata.push(next);
        }
        strata
    }

    /// Square-free factors `s_i = g_i / g_{i+1}`; `s_i` vanishes exactly at
    /// the roots of multiplicity greater than `i`.
    pub fn squarefree_strata(&self) -> Vec<Self> {
        self.multiplicity_strata()
            .windows(2)
            .map(|w| w[0].exact_div(&w[1]).expect("g_{i+1} divides g_i"))
            .collect()
    }

    /// Number of distinct real roots in `(a, +inf)`; `self` must be square-free.
    fn distinct_roots_above(&self, a: &Rational) -> usize {
        let chain = self.sturm_chain();
        let variations = |signs: Vec<Ordering>| {
            let nz: Vec<Ordering> = signs.into_iter().filter(|s| *s != Ordering::Equal).collect();
            nz.windows(2).filter(|w| w[0] != w[1]).count()
        };
        let at_a = variations(chain.iter().map(|p| p.sign_at(a)).collect());
        let at_inf = variations(chain.iter().map(Self::sign_at_infinity).collect());
        at_a - at_inf
    }

    /// Real roots `>= a`, counted with multiplicity.
    pub fn count_roots_geq(&self, a: &Rational) -> Result<usize, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        Ok(self
            .squarefree_strata()
            .iter()
            .map(|s| {
                s.distinct_roots_above(a) + usize::from(s.sign_at(a) == Ordering::Equal)
            })
            .sum())
    }

    /// Real roots `> a`, counted with multiplicity.
    pub fn count_roots_gt(&self, a: &Rational) -> Result<usize, PolyError> {
        Ok(self.count_roots_geq(a)? - self.multiplicity_at(a)?)
    }

    /// Largest `k` with `(x - a)^k | p`.
    pub fn multiplicity_at(&self, a: &Rational) -> Result<usize, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        // (den x - num) is primitive, so quotients stay integral.
        let linear = Self::new(vec![-a.numer().clone(), a.denom().clone()]);
        let mut p = self.clone();
        let mut k = 0;
        while let Ok(q) = p.exact_div(&linear) {
            if q.is_zero() {
                break;
            }
            p = q;
            k += 1;
        }
        Ok(k)
    }

    /// Real roots in the closed interval `[a, b]`, with multiplicity.
    pub fn count_roots_closed(&self, a: &Rational, b: &Rational) -> Result<usize, PolyError> {
        if a > b {
            return Ok(0);
        }
        Ok(self.count_roots_geq(a)? - self.count_roots_gt(b)?)
    }
}

/// Root counting against a fixed polynomial, with the square-free strata
/// and their Sturm chains computed once.
#[derive(Debug, Clone)]
pub struct RootCounter {
    poly: IntegerPolynomial,
    chains: Vec<Vec<IntegerPolynomial>>,
    at_infinity: Vec<usize>,
}

fn sign_variations(signs: impl Iterator<Item = Ordering>) -> usize {
    let mut last = Ordering::Equal;
    let mut count = 0;
    for s in signs.filter(|s| *s != Ordering::Equal) {
        if last != Ordering::Equal && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

impl RootCounter {
    pub fn new(poly: IntegerPolynomial) -> Result<Self, PolyError> {
        if poly.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        let chains: Vec<Vec<IntegerPolynomial>> = poly
            .squarefree_strata()
            .iter()
            .map(IntegerPolynomial::sturm_chain)
            .collect();
        let at_infinity = chains
            .iter()
            .map(|c| sign_variations(c.iter().map(IntegerPolynomial::sign_at_infinity)))
            .collect();
        Ok(RootCounter {
            poly,
            chains,
            at_infinity,
        })
    }

    pub fn poly(&self) -> &IntegerPolynomial {
        &self.poly
    }

    /// Same as [`IntegerPolynomial::count_roots_geq`].
    pub fn count_geq(&self, a: &Rational) -> usize {
        self.chains
            .iter()
            .zip(&self.at_infinity)
            .map(|(chain, inf)| {
                let signs: Vec<Ordering> = chain.iter().map(|p| p.sign_at(a)).collect();
                sign_variations(signs.iter().copied()) - inf + usize::from(signs[0] == Ordering::Equal)
            })
            .sum()
    }

    /// Roots at `a`; the number of strata vanishing there.
    pub fn multiplicity(&self, a: &Rational) -> usize {
        self.chains
            .iter()
            .filter(|c| c[0].sign_at(a) == Ordering::Equal)
            .count()
    }

    pub fn count_gt(&self, a: &Rational) -> usize {
        self.count_geq(a) - self.multiplicity(a)
    }

    /// Roots in `[a, b]`; zero when `a > b`.
    pub fn count_closed(&self, a: &Rational, b: &Rational) -> usize {
        if a > b {
            return 0;
        }
        self.count_geq(a) - self.count_gt(b)
    }

    /// Whether the `k`-th largest root (1-based) is below `r`.
    pub fn kth_below(&self, k: usize, r: &Rational) -> bool {
        self.count_geq(r) < k
    }

    /// Whether the `k`-th largest root is exactly `r`.
    pub fn kth_equals(&self, k: usize, r: &Rational) -> bool {
        self.count_gt(r) < k && k <= self.count_geq(r)
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
