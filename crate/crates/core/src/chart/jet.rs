//! Truncated Taylor jets of order 3 in three variables.
//!
//! A [`Jet3`] stores the 20 Taylor coefficients `∂^α f(p) / α!` with
//! `|α| ≤ 3` together with the number of orders that are still exact.
//! Differentiating drops one order; products and compositions keep the
//! smaller order of their inputs.

use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use crate::error::{Error, Result};

pub const MAX_ORDER: u8 = 3;
pub const N_COEFFS: usize = 20;

/// Multi-indices of total degree ≤ 3, graded then lexicographic.
pub const MULTI_INDICES: [[u8; 3]; N_COEFFS] = [
    [0, 0, 0],
    [1, 0, 0],
    [0, 1, 0],
    [0, 0, 1],
    [2, 0, 0],
    [1, 1, 0],
    [1, 0, 1],
    [0, 2, 0],
    [0, 1, 1],
    [0, 0, 2],
    [3, 0, 0],
    [2, 1, 0],
    [2, 0, 1],
    [1, 2, 0],
    [1, 1, 1],
    [1, 0, 2],
    [0, 3, 0],
    [0, 2, 1],
    [0, 1, 2],
    [0, 0, 3],
];

const NONE: u8 = u8::MAX;

const fn degree(a: [u8; 3]) -> u8 {
    a[0] + a[1] + a[2]
}

const fn build_lookup() -> [[[u8; 4]; 4]; 4] {
    let mut table = [[[NONE; 4]; 4]; 4];
    let mut s = 0;
    while s < N_COEFFS {
        let a = MULTI_INDICES[s];
        table[a[0] as usize][a[1] as usize][a[2] as usize] = s as u8;
        s += 1;
    }
    table
}

const LOOKUP: [[[u8; 4]; 4]; 4] = build_lookup();

const N_PRODUCTS: usize = 84;

/// All `(p, q, r)` with `MULTI_INDICES[p] + MULTI_INDICES[q] = MULTI_INDICES[r]`.
const fn build_products() -> [(u8, u8, u8); N_PRODUCTS] {
    let mut out = [(0u8, 0u8, 0u8); N_PRODUCTS];
    let mut n = 0;
    let mut p = 0;
    while p < N_COEFFS {
        let mut q = 0;
        while q < N_COEFFS {
            let a = MULTI_INDICES[p];
            let b = MULTI_INDICES[q];
            if degree(a) + degree(b) <= MAX_ORDER {
                let r =
                    LOOKUP[(a[0] + b[0]) as usize][(a[1] + b[1]) as usize][(a[2] + b[2]) as usize];
                out[n] = (p as u8, q as u8, r);
                n += 1;
            }
            q += 1;
        }
        p += 1;
    }
    out
}

const PRODUCTS: [(u8, u8, u8); N_PRODUCTS] = build_products();

fn slot(a: [u8; 3]) -> Option<usize> {
    if a.iter().any(|&k| k > MAX_ORDER) {
        return None;
    }
    let s = LOOKUP[a[0] as usize][a[1] as usize][a[2] as usize];
    (s != NONE).then_some(s as usize)
}

fn factorial(n: u8) -> f64 {
    (1..=n as u32).product::<u32>() as f64
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet3 {
    coeffs: [f64; N_COEFFS],
    order: u8,
}

impl Jet3 {
    pub fn constant(value: f64) -> Self {
        let mut coeffs = [0.0; N_COEFFS];
        coeffs[0] = value;
        Self {
            coeffs,
            order: MAX_ORDER,
        }
    }

    pub fn zero() -> Self {
        Self::constant(0.0)
    }

    /// The coordinate function `x_axis` expanded at a point whose
    /// `axis`-coordinate is `value`.
    pub fn coordinate(axis: usize, value: f64) -> Self {
        let mut jet = Self::constant(value);
        jet.coeffs[1 + axis] = 1.0;
        jet
    }

    /// The three coordinate jets at `p`.
    pub fn coordinates(p: [f64; 3]) -> [Jet3; 3] {
        [0, 1, 2].map(|k| Self::coordinate(k, p[k]))
    }

    /// Builds a jet from Taylor coefficients in [`MULTI_INDICES`] order;
    /// coefficients above `order` are discarded.
    pub fn from_taylor(coeffs: [f64; N_COEFFS], order: u8) -> Self {
        assert!(
            order <= MAX_ORDER,
            "jets are truncated at order {MAX_ORDER}"
        );
        let mut jet = Self { coeffs, order };
        jet.truncate();
        jet
    }

    fn truncate(&mut self) {
        for (c, a) in self.coeffs.iter_mut().zip(MULTI_INDICES) {
            if degree(a) > self.order {
                *c = 0.0;
            }
        }
    }

    pub fn value(&self) -> f64 {
        self.coeffs[0]
    }

    /// Highest total derivative order that is still exact.
    pub fn order(&self) -> u8 {
        self.order
    }

    pub fn taylor(&self) -> &[f64; N_COEFFS] {
        &self.coeffs
    }

    /// `∂^α f` at the base point.
    ///
    /// # Panics
    /// If `|α|` exceeds the jet's order; a missing derivative is never
    /// reported as zero.
    pub fn derivative(&self, alpha: [u8; 3]) -> f64 {
        let deg = degree(alpha);
        assert!(
            deg <= self.order,
            "requested a derivative of order {deg} from a jet exact to order {}",
            self.order
        );
        let s = slot(alpha).expect("degree checked above");
        self.coeffs[s] * alpha.iter().map(|&k| factorial(k)).product::<f64>()
    }

    /// The jet of `∂f/∂x_axis`, one order shorter.
    ///
    /// # Panics
    /// If the jet has no exact first derivatives left.
    pub fn partial(&self, axis: usize) -> Self {
        assert!(
            self.order > 0,
            "cannot differentiate a jet exact only to order 0"
        );
        let order = self.order - 1;
        let mut coeffs = [0.0; N_COEFFS];
        for (s, a) in MULTI_INDICES.iter().enumerate() {
            if degree(*a) > order {
                continue;
            }
            let mut up = *a;
            up[axis] += 1;
            let k = up[axis] as f64;
            coeffs[s] = k * self.coeffs[slot(up).expect("degree at most 3")];
        }
        Self { coeffs, order }
    }

    /// The part without constant term.
    fn nilpotent_part(&self) -> Self {
        let mut u = *self;
        u.coeffs[0] = 0.0;
        u
    }

    /// `Σ_k w_k u^k` for `k = 0..=3` with `u` nilpotent.
    fn series(u: &Self, w: [f64; 4]) -> Self {
        let u2 = *u * *u;
        let u3 = u2 * *u;
        let mut out = *u * w[1] + u2 * w[2] + u3 * w[3];
        out.coeffs[0] += w[0];
        out.order = u.order;
        out
    }

    /// `exp ∘ f`.
    pub fn exp(&self) -> Self {
        let e = self.value().exp();
        Self::series(&self.nilpotent_part(), [1.0, 1.0, 0.5, 1.0 / 6.0]) * e
    }

    /// `1 / f`, via `1/(v(1+u)) = (1 − u + u² − u³)/v`.
    pub fn recip(&self) -> Result<Self> {
        let v = self.value();
        if v == 0.0 || !v.is_finite() {
            return Err(Error::SingularJet(v));
        }
        let u = self.nilpotent_part() * (1.0 / v);
        Ok(Self::series(&u, [1.0, -1.0, 1.0, -1.0]) * (1.0 / v))
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().fold(0.0_f64, |m, c| m.max(c.abs()))
    }
}

impl Default for Jet3 {
    fn default() -> Self {
        Self::zero()
    }
}

impl Add for Jet3 {
    type Output = Jet3;

    fn add(self, rhs: Jet3) -> Jet3 {
        let mut out = Jet3 {
            coeffs: [0.0; N_COEFFS],
            order: self.order.min(rhs.order),
        };
        for s in 0..N_COEFFS {
            out.coeffs[s] = self.coeffs[s] + rhs.coeffs[s];
        }
        out.truncate();
        out
    }
}

impl AddAssign for Jet3 {
    fn add_assign(&mut self, rhs: Jet3) {
        *self = *self + rhs;
    }
}

impl Sub for Jet3 {
    type Output = Jet3;

    fn sub(self, rhs: Jet3) -> Jet3 {
        self + (-rhs)
    }
}

impl Neg for Jet3 {
    type Output = Jet3;

    fn neg(mut self) -> Jet3 {
        for c in &mut self.coeffs {
            *c = -*c;
        }
        self
    }
}

impl Mul for Jet3 {
    type Output = Jet3;

    fn mul(self, rhs: Jet3) -> Jet3 {
        let order = self.order.min(rhs.order);
        let mut coeffs = [0.0; N_COEFFS];
        for &(p, q, r) in &PRODUCTS {
            let r = r as usize;
            if degree(MULTI_INDICES[r]) <= order {
                coeffs[r] += self.coeffs[p as usize] * rhs.coeffs[q as usize];
            }
        }
        Jet3 { coeffs, order }
    }
}

impl Mul<f64> for Jet3 {
    type Output = Jet3;

    fn mul(mut self, rhs: f64) -> Jet3 {
        for c in &mut self.coeffs {
            *c *= rhs;
        }
        self
    }
}

impl Mul<Jet3> for f64 {
    type Output = Jet3;

    fn mul(self, rhs: Jet3) -> Jet3 {
        rhs * self
    }
}

impl Add<f64> for Jet3 {
    type Output = Jet3;

    fn add(mut self, rhs: f64) -> Jet3 {
        self.coeffs[0] += rhs;
        self
    }
}

impl Sub<f64> for Jet3 {
    type Output = Jet3;

    fn sub(self, rhs: f64) -> Jet3 {
        self + (-rhs)
    }
}

impl std::iter::Sum for Jet3 {
    fn sum<I: Iterator<Item = Jet3>>(iter: I) -> Jet3 {
        iter.fold(Jet3::zero(), |a, b| a + b)
    }
}
