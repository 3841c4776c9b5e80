//! Exact arithmetic in ℤ[2cos(π/N)].
//!
//! Elements are coefficient vectors in the basis `1, y, …, y^{d−1}` with
//! `y = 2cos(π/N)` and `d = φ(2N)/2`. Products are reduced modulo the monic
//! minimal polynomial of `y` immediately.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use super::LinError;

/// Largest supported ring degree.
pub const MAX_DEGREE: usize = 64;

/// Polynomials with ascending integer coefficients.
type BigPoly = Vec<BigInt>;

fn trim(p: &mut BigPoly) {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

/// Exact division by a monic polynomial; the remainder must vanish.
fn div_exact_monic(num: &BigPoly, den: &BigPoly) -> BigPoly {
    let mut rem = num.clone();
    let dd = den.len() - 1;
    if rem.len() <= dd {
        return vec![BigInt::zero()];
    }
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (i, di) in den.iter().enumerate() {
            rem[k + i] -= &c * di;
        }
        quot[k] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero), "inexact cyclotomic division");
    trim(&mut quot);
    quot
}

/// The `n`-th cyclotomic polynomial Φₙ, by dividing xⁿ − 1 by Φ_d for
/// every proper divisor `d`.
pub fn cyclotomic_polynomial(n: usize) -> Vec<BigInt> {
    assert!(n >= 1);
    let mut memo: Vec<Option<BigPoly>> = vec![None; n + 1];
    cyclotomic_memo(n, &mut memo)
}

fn cyclotomic_memo(n: usize, memo: &mut Vec<Option<BigPoly>>) -> BigPoly {
    if let Some(p) = &memo[n] {
        return p.clone();
    }
    let mut p = vec![BigInt::zero(); n + 1];
    p[0] = -BigInt::one();
    p[n] = BigInt::one();
    for d in (1..n).filter(|d| n % d == 0) {
        let phi_d = cyclotomic_memo(d, memo);
        p = div_exact_monic(&p, &phi_d);
    }
    memo[n] = Some(p.clone());
    p
}

/// Euler's totient.
pub fn euler_phi(mut n: usize) -> usize {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
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

/// Dickson polynomials `D_k` with `D_k(x + 1/x) = x^k + x^{−k}`.
fn dickson(k: usize) -> BigPoly {
    let mut prev = vec![BigInt::from(2)];
    if k == 0 {
        return prev;
    }
    let mut cur = vec![BigInt::zero(), BigInt::one()];
    for _ in 1..k {
        let mut next = vec![BigInt::zero(); cur.len() + 1];
        for (i, c) in cur.iter().enumerate() {
            next[i + 1] += c;
        }
        for (i, c) in prev.iter().enumerate() {
            next[i] -= c;
        }
        prev = cur;
        cur = next;
    }
    cur
}

/// The ring ℤ[2cos(π/N)] together with the minimal polynomial of its generator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RealCyclotomicRing {
    order: usize,
    minpoly: Vec<i64>,
}

impl RealCyclotomicRing {
    /// Order parameter `N`.
    pub fn order(&self) -> usize {
        self.order
    }

    /// Minimal polynomial of `2cos(π/N)`, ascending and monic.
    pub fn minpoly(&self) -> &[i64] {
        &self.minpoly
    }

    pub fn degree(&self) -> usize {
        self.minpoly.len() - 1
    }

    pub fn zero(&self) -> RingElement {
        RingElement(vec![0; self.degree()])
    }

    pub fn one(&self) -> RingElement {
        self.from_int(1)
    }

    pub fn from_int(&self, k: i64) -> RingElement {
        let mut c = vec![0; self.degree()];
        c[0] = k;
        RingElement(c)
    }

    /// The generator `y = 2cos(π/N)`.
    pub fn generator(&self) -> RingElement {
        self.reduce_wide(&[0, 1]).expect("generator never overflows")
    }

    /// `2cos(π/m)` for `m` dividing `N`, as `D_{N/m}(y)`. `m = 2` and `m = 3`
    /// are accepted for every `N` since their values are 0 and 1.
    pub fn two_cos_pi_over(&self, m: usize) -> Result<RingElement, LinError> {
        match m {
            2 => return Ok(self.zero()),
            3 => return Ok(self.one()),
            _ => {}
        }
        if m == 0 || self.order % m != 0 {
            return Err(LinError::Domain(format!(
                "2cos(pi/{m}) is not expressed in Z[2cos(pi/{})]",
                self.order
            )));
        }
        let d = dickson(self.order / m);
        let wide: Vec<i128> = d
            .iter()
            .map(|c| c.to_i128().ok_or(LinError::Overflow))
            .collect::<Result<_, _>>()?;
        self.reduce_i128(wide)
    }

    pub fn add(&self, a: &RingElement, b: &RingElement) -> Result<RingElement, LinError> {
        a.0.iter()
            .zip(&b.0)
            .map(|(x, y)| x.checked_add(*y).ok_or(LinError::Overflow))
            .collect::<Result<_, _>>()
            .map(RingElement)
    }

    pub fn sub(&self, a: &RingElement, b: &RingElement) -> Result<RingElement, LinError> {
        a.0.iter()
            .zip(&b.0)
            .map(|(x, y)| x.checked_sub(*y).ok_or(LinError::Overflow))
            .collect::<Result<_, _>>()
            .map(RingElement)
    }

    pub fn neg(&self, a: &RingElement) -> RingElement {
        RingElement(a.0.iter().map(|x| -x).collect())
    }

    pub fn mul(&self, a: &RingElement, b: &RingElement) -> Result<RingElement, LinError> {
        let d = self.degree();
        let mut wide = vec![0i128; 2 * d - 1];
        for (i, &x) in a.0.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.0.iter().enumerate() {
                wide[i + j] += x as i128 * y as i128;
            }
        }
        self.reduce_i128(wide)
    }

    fn reduce_wide(&self, coeffs: &[i64]) -> Result<RingElement, LinError> {
        self.reduce_i128(coeffs.iter().map(|&c| c as i128).collect())
    }

    fn reduce_i128(&self, mut wide: Vec<i128>) -> Result<RingElement, LinError> {
        let d = self.degree();
        for k in (d..wide.len()).rev() {
            let c = wide[k];
            if c == 0 {
                continue;
            }
            // y^k = y^{k-d} · y^d and y^d = −Σ minpoly[i] yⁱ
            for i in 0..d {
                let m = self.minpoly[i] as i128;
                wide[k - d + i] = wide[k - d + i]
                    .checked_sub(c.checked_mul(m).ok_or(LinError::Overflow)?)
                    .ok_or(LinError::Overflow)?;
            }
            wide[k] = 0;
        }
        wide.resize(d.max(wide.len()), 0);
        wide.truncate(d);
        wide.into_iter()
            .map(|c| i64::try_from(c).map_err(|_| LinError::Overflow))
            .collect::<Result<_, _>>()
            .map(RingElement)
    }

    /// Floating-point value of an element, using the generator's value.
    pub fn approx(&self, a: &RingElement) -> f64 {
        let y = 2.0 * (std::f64::consts::PI / self.order as f64).cos();
        a.0.iter().rev().fold(0.0, |acc, &c| acc * y + c as f64)
    }
}

impl fmt::Debug for RealCyclotomicRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z[2cos(pi/{})] minpoly {:?}", self.order, self.minpoly)
    }
}

/// Coefficients in the basis `1, y, …, y^{d−1}`; always reduced.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RingElement(pub(crate) Vec<i64>);

impl RingElement {
    pub fn coefficients(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// The integer value if the element is a rational integer.
    pub fn as_integer(&self) -> Option<i64> {
        self.0[1..].iter().all(|&c| c == 0).then(|| self.0[0])
    }
}

/// Builds ℤ[2cos(π/n)], computing the minimal polynomial from Φ_{2n}.
pub fn real_cyclotomic_ring(n: usize) -> Result<RealCyclotomicRing, LinError> {
    if n < 2 {
        return Err(LinError::Domain(format!("order must be at least 2, got {n}")));
    }
    let degree = euler_phi(2 * n) / 2;
    if degree > MAX_DEGREE {
        return Err(LinError::Domain(format!(
            "Z[2cos(pi/{n})] has degree {degree}, above the supported maximum {MAX_DEGREE}"
        )));
    }
    let phi = cyclotomic_polynomial(2 * n);
    debug_assert_eq!(phi.len() - 1, 2 * degree);

    // Φ(x)/x^d = c_d + Σ_{k≥1} c_{d+k}(x^k + x^{−k}) by palindromy.
    let mut minpoly: BigPoly = vec![BigInt::zero(); degree + 1];
    minpoly[0] = phi[degree].clone();
    for k in 1..=degree {
        let c = &phi[degree + k];
        if c.is_zero() {
            continue;
        }
        for (i, dk) in dickson(k).iter().enumerate() {
            minpoly[i] += c * dk;
        }
    }
    let minpoly = minpoly
        .iter()
        .map(|c| c.to_i64().ok_or(LinError::Overflow))
        .collect::<Result<Vec<_>, _>>()?;
    debug_assert_eq!(minpoly.last(), Some(&1));
    Ok(RealCyclotomicRing { order: n, minpoly })
}
