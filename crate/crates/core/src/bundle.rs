//! Symbolic Chow ring of a split projective bundle P(O(d₁) ⊕ … ⊕ O(d_r))
//! over P², r ∈ {2,3}: the fan-free pipeline for intersection numbers,
//! canonical class and c₂. Elements carry exact rational coefficients on the
//! monomial basis h^i ξ^j (0 ≤ i ≤ 2, 0 ≤ j ≤ r−1), where h is the pullback
//! of a line and ξ the tautological class with ∫ h²ξ^{r−1} = 1. Reduction is
//! by the relation ξ^r = c₁(E)·hξ^{r−1} − c₂(E)·h²ξ^{r−2} + c₃(E)·h³ξ^{r−3};
//! the c₃ term is carried along and annihilated by h³ = 0, never assumed away.

use std::collections::BTreeMap;
use std::fmt;

use num::rational::BigRational;
use num::{BigInt, One, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::fan::check_bundle_degrees;

/// The Chow ring of P(O(d₁) ⊕ … ⊕ O(d_r)) over P², determined by the
/// normalized degree list (d₁ = 0 ≤ … ≤ d_r).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BundleRing {
    degrees: Vec<i64>,
}

impl BundleRing {
    pub fn new(degrees: &[i64]) -> Result<Self> {
        check_bundle_degrees(degrees)?;
        Ok(BundleRing { degrees: degrees.to_vec() })
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    /// c₁(E) = Σ dᵢ.
    pub fn bundle_c1(&self) -> i64 {
        self.degrees.iter().sum()
    }

    /// c₂(E) = Σ_{i<j} dᵢdⱼ.
    pub fn bundle_c2(&self) -> i64 {
        let d = &self.degrees;
        (0..d.len())
            .flat_map(|i| (i + 1..d.len()).map(move |j| (i, j)))
            .map(|(i, j)| d[i] * d[j])
            .sum()
    }

    /// c₃(E) = d₁d₂d₃ (zero for rank 2, and zero anyway since d₁ = 0).
    pub fn bundle_c3(&self) -> i64 {
        if self.rank() == 3 {
            self.degrees.iter().product()
        } else {
            0
        }
    }

    fn basis_len(&self) -> usize {
        3 * self.rank()
    }

    fn index(&self, i: usize, j: usize) -> usize {
        i * self.rank() + j
    }

    pub fn zero(&self) -> RingElement {
        RingElement {
            degrees: self.degrees.clone(),
            coeffs: vec![BigRational::zero(); self.basis_len()],
        }
    }

    pub fn one(&self) -> RingElement {
        self.monomial(0, 0)
    }

    /// The basis monomial h^i ξ^j, reduced if the exponents are out of range.
    pub fn monomial(&self, h_exp: usize, xi_exp: usize) -> RingElement {
        let mut e = self.zero();
        self.accumulate(&mut e.coeffs, h_exp, xi_exp, BigRational::one());
        e
    }

    pub fn h(&self) -> RingElement {
        self.monomial(1, 0)
    }

    pub fn xi(&self) -> RingElement {
        self.monomial(0, 1)
    }

    /// a·ξ + b·h, the general divisor class.
    pub fn divisor(&self, xi_coeff: i64, h_coeff: i64) -> RingElement {
        &self.xi().scaled_int(xi_coeff) + &self.h().scaled_int(h_coeff)
    }

    /// Canonical reduction of h^i ξ^j into the basis, accumulating into
    /// `coeffs`; h-exponent ≥ 3 annihilates.
    fn accumulate(&self, coeffs: &mut [BigRational], i: usize, j: usize, c: BigRational) {
        if c.is_zero() || i >= 3 {
            return;
        }
        let r = self.rank();
        if j < r {
            coeffs[self.index(i, j)] += c;
            return;
        }
        // ξ^r = c₁hξ^{r−1} − c₂h²ξ^{r−2} + c₃h³ξ^{r−3}
        self.accumulate(coeffs, i + 1, j - 1, &c * BigRational::from_integer(self.bundle_c1().into()));
        self.accumulate(
            coeffs,
            i + 2,
            j - 2,
            &c * BigRational::from_integer(BigInt::from(-self.bundle_c2())),
        );
        if r == 3 && j >= 3 {
            self.accumulate(
                coeffs,
                i + 3,
                j - 3,
                &c * BigRational::from_integer(self.bundle_c3().into()),
            );
        }
    }

    /// The canonical class K = −r·ξ + (c₁(E) − 3)·h.
    pub fn canonical_class(&self) -> RingElement {
        self.divisor(-(self.rank() as i64), self.bundle_c1() - 3)
    }

    /// c₂ of the tangent bundle, from the Chern roots of the pullback of
    /// T_{P²} and the relative Euler sequence: {h, h, h} ∪ {ξ − dᵢh}.
    pub fn tangent_c2(&self) -> RingElement {
        let roots: Vec<RingElement> = std::iter::repeat_n(self.h(), 3)
            .chain(self.degrees.iter().map(|&d| self.divisor(1, -d)))
            .collect();
        let mut e2 = self.zero();
        for a in 0..roots.len() {
            for b in a + 1..roots.len() {
                e2 = &e2 + &(&roots[a] * &roots[b]);
            }
        }
        e2
    }
}

/// An element of a bundle Chow ring: exact rational coefficients on the
/// monomial basis of its owner.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingElement {
    degrees: Vec<i64>,
    coeffs: Vec<BigRational>,
}

impl RingElement {
    pub fn ring(&self) -> BundleRing {
        BundleRing { degrees: self.degrees.clone() }
    }

    pub fn coefficient(&self, h_exp: usize, xi_exp: usize) -> &BigRational {
        let r = self.degrees.len();
        assert!(h_exp < 3 && xi_exp < r, "not a basis monomial");
        &self.coeffs[h_exp * r + xi_exp]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn scaled(&self, c: &BigRational) -> RingElement {
        RingElement {
            degrees: self.degrees.clone(),
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn scaled_int(&self, c: i64) -> RingElement {
        self.scaled(&BigRational::from_integer(c.into()))
    }

    pub fn pow(&self, n: usize) -> RingElement {
        let mut acc = self.ring().one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// The coefficients of h and ξ when the element is a divisor class
    /// (purely degree 1 with integral coefficients); errors otherwise.
    pub fn as_divisor(&self) -> Result<(i64, i64)> {
        let r = self.degrees.len();
        for (idx, c) in self.coeffs.iter().enumerate() {
            let (i, j) = (idx / r, idx % r);
            if i + j != 1 && !c.is_zero() {
                return Err(Error::Domain(format!(
                    "not a divisor class: nonzero coefficient on h^{i} xi^{j}"
                )));
            }
        }
        let xi = self.coefficient(0, 1);
        let h = self.coefficient(1, 0);
        if !xi.is_integer() || !h.is_integer() {
            return Err(Error::Domain("divisor class has non-integral coefficients".into()));
        }
        let to = |x: &BigRational| x.to_integer().to_i64().ok_or(Error::Overflow("divisor class"));
        Ok((to(xi)?, to(h)?))
    }

    fn assert_same_ring(&self, other: &RingElement) {
        assert_eq!(
            self.degrees, other.degrees,
            "ring elements belong to different bundle rings"
        );
    }
}

impl std::ops::Add<&RingElement> for &RingElement {
    type Output = RingElement;
    fn add(self, rhs: &RingElement) -> RingElement {
        self.assert_same_ring(rhs);
        RingElement {
            degrees: self.degrees.clone(),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl std::ops::Sub<&RingElement> for &RingElement {
    type Output = RingElement;
    fn sub(self, rhs: &RingElement) -> RingElement {
        self.assert_same_ring(rhs);
        RingElement {
            degrees: self.degrees.clone(),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl std::ops::Mul<&RingElement> for &RingElement {
    type Output = RingElement;
    fn mul(self, rhs: &RingElement) -> RingElement {
        self.assert_same_ring(rhs);
        let ring = self.ring();
        let r = ring.rank();
        let mut out = ring.zero();
        for (ia, ca) in self.coeffs.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (ib, cb) in rhs.coeffs.iter().enumerate() {
                if cb.is_zero() {
                    continue;
                }
                let (ha, xa) = (ia / r, ia % r);
                let (hb, xb) = (ib / r, ib % r);
                ring.accumulate(&mut out.coeffs, ha + hb, xa + xb, ca * cb);
            }
        }
        out
    }
}

/// Constructs the ring; for degrees (0,0,2) the reduction is ξ³ → 2hξ².
pub fn bundle_ring(degrees: &[i64]) -> Result<BundleRing> {
    BundleRing::new(degrees)
}

/// ∫: the coefficient of h²ξ^{r−1} after canonical reduction. Lower-degree
/// terms integrate to 0 by convention.
pub fn integrate(e: &RingElement) -> BigRational {
    e.coefficient(2, e.degrees.len() - 1).clone()
}

/// Integral of an algebraic class of integral type; a fractional value is an
/// inconsistency.
pub fn integrate_int(e: &RingElement) -> Result<i64> {
    let v = integrate(e);
    if !v.is_integer() {
        return Err(Error::Inconsistency(format!("non-integral integral {v}")));
    }
    v.to_integer().to_i64().ok_or(Error::Overflow("bundle integral"))
}

/// Canonical class, tangent c₂ and their pairings. Rank 3 yields the fourfold
/// numbers K⁴ and K²·c₂; rank 2 yields the threefold degree (−K)³.
#[derive(Clone, Debug)]
pub struct CanonicalChern {
    pub k: RingElement,
    pub c2: RingElement,
    pub k4: Option<i64>,
    pub k2c2: Option<i64>,
    pub neg_k_cubed: Option<i64>,
}

pub fn canonical_and_chern(ring: &BundleRing) -> Result<CanonicalChern> {
    let k = ring.canonical_class();
    let c2 = ring.tangent_c2();
    let mut out = CanonicalChern { k: k.clone(), c2: c2.clone(), k4: None, k2c2: None, neg_k_cubed: None };
    match ring.rank() {
        3 => {
            out.k4 = Some(integrate_int(&k.pow(4))?);
            out.k2c2 = Some(integrate_int(&(&k.pow(2) * &c2))?);
        }
        2 => {
            out.neg_k_cubed = Some(integrate_int(&k.scaled_int(-1).pow(3))?);
        }
        _ => unreachable!("rank checked at ring construction"),
    }
    Ok(out)
}

fn rational_to_string(x: &BigRational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

fn rational_from_string(s: &str) -> Option<BigRational> {
    match s.split_once('/') {
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
        Some((p, q)) => {
            let p = p.parse::<BigInt>().ok()?;
            let q = q.parse::<BigInt>().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(BigRational::new(p, q))
        }
    }
}

impl Serialize for RingElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Wire<'a> {
            degrees: &'a [i64],
            coeffs: BTreeMap<String, String>,
        }
        let r = self.degrees.len();
        let mut coeffs = BTreeMap::new();
        for (idx, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                coeffs.insert(format!("h^{} xi^{}", idx / r, idx % r), rational_to_string(c));
            }
        }
        Wire { degrees: &self.degrees, coeffs }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for RingElement {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Wire {
            degrees: Vec<i64>,
            coeffs: BTreeMap<String, String>,
        }
        let wire = Wire::deserialize(deserializer)?;
        let ring = BundleRing::new(&wire.degrees).map_err(D::Error::custom)?;
        let mut e = ring.zero();
        for (key, value) in &wire.coeffs {
            let exps: Option<(usize, usize)> = (|| {
                let (h, xi) = key.split_once(' ')?;
                let i = h.strip_prefix("h^")?.parse().ok()?;
                let j = xi.strip_prefix("xi^")?.parse().ok()?;
                Some((i, j))
            })();
            let Some((i, j)) = exps else {
                return Err(D::Error::custom(format!("bad monomial key {key:?}")));
            };
            if i >= 3 || j >= ring.rank() {
                return Err(D::Error::custom(format!("monomial {key:?} is not in the basis")));
            }
            let Some(c) = rational_from_string(value) else {
                return Err(D::Error::custom(format!("bad rational {value:?}")));
            };
            e.coeffs[ring.index(i, j)] += c;
        }
        Ok(e)
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = self.degrees.len();
        let mut first = true;
        for (idx, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "({}) h^{} xi^{}", rational_to_string(c), idx / r, idx % r)?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
