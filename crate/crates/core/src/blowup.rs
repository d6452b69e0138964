//! Invariant bookkeeping for blow-ups of smooth fourfolds along smooth
//! surfaces. Given the intersection data of the center, the update rules are
//!
//!   K⁴      ↦ K⁴ − 3(K_{Z|S})² − 2 K_S·K_{Z|S} + c₂(N_{S/Z}) − K_S²
//!   K²·c₂   ↦ K²·c₂ − 12χ(O_S) + 2K_S² − 2K_S·K_{Z|S} − 2c₂(N_{S/Z})
//!   χ(−K)   ↦ χ(−K) − χ(O_S) − ((K_{Z|S})² + K_S·K_{Z|S}) / 2
//!
//! and the Betti/Hodge numbers grow by those of the center, shifted by one
//! in (p,q)-degree.

use serde::{Deserialize, Serialize};

use crate::bundle::{integrate_int, BundleRing, RingElement};
use crate::error::{Error, Result};

/// The intersection-theoretic data of a smooth surface center S inside a
/// smooth fourfold Z: exactly the inputs of the blow-up update.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceCenterData {
    pub name: String,
    /// K_S²
    #[serde(rename = "KS2")]
    pub ks2: i64,
    /// χ(O_S)
    #[serde(rename = "chiOS")]
    pub chi_os: i64,
    /// c₂(N_{S/Z})
    #[serde(rename = "c2N")]
    pub c2n: i64,
    /// (K_{Z|S})²
    #[serde(rename = "KZS2")]
    pub kzs2: i64,
    /// K_S · K_{Z|S}
    #[serde(rename = "KSKZS")]
    pub kskzs: i64,
    #[serde(default)]
    pub b1: i64,
    pub h11: i64,
    #[serde(default)]
    pub h02: i64,
}

impl SurfaceCenterData {
    /// b₂(S) = h^{1,1} + 2h^{0,2}.
    pub fn b2(&self) -> i64 {
        self.h11 + 2 * self.h02
    }

    /// How much K⁴ drops when blowing up along this center.
    pub fn k4_decrease(&self) -> i64 {
        3 * self.kzs2 + 2 * self.kskzs - self.c2n + self.ks2
    }
}

/// The invariant record of a smooth fourfold, as carried through blow-up
/// chains. χ(T) and δ are only available when computed torically; a blow-up
/// update drops them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FourfoldInvariants {
    #[serde(rename = "K4")]
    pub k4: i64,
    #[serde(rename = "K2c2")]
    pub k2c2: i64,
    #[serde(rename = "chiO")]
    pub chi_o: i64,
    #[serde(rename = "chi_mK")]
    pub chi_mk: i64,
    pub rho: i64,
    pub betti: [i64; 9],
    pub h22: i64,
    pub h13: i64,
    pub b3: i64,
    #[serde(rename = "chiT", skip_serializing_if = "Option::is_none", default)]
    pub chi_t: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub delta: Option<i64>,
}

impl FourfoldInvariants {
    /// Checks the structural identities the record must satisfy:
    /// χ(−K) = (2K⁴ + K²c₂)/12 + χ(O), h^{2,2} = b₄ − 2h^{1,3}, b₃ even.
    pub fn validate(&self) -> Result<()> {
        let chi = chi_anticanonical(self.k4, self.k2c2, self.chi_o)?;
        if chi != self.chi_mk {
            return Err(Error::Inconsistency(format!(
                "chi(-K) = {} but (2K4 + K2c2)/12 + chiO = {chi}",
                self.chi_mk
            )));
        }
        if self.h22 != self.betti[4] - 2 * self.h13 {
            return Err(Error::Inconsistency(format!(
                "h22 = {} but b4 - 2*h13 = {}",
                self.h22,
                self.betti[4] - 2 * self.h13
            )));
        }
        if self.b3 != self.betti[3] || self.b3 % 2 != 0 {
            return Err(Error::Inconsistency(format!("bad b3 = {} (betti: {:?})", self.b3, self.betti)));
        }
        Ok(())
    }
}

/// χ(−K) = (2K⁴ + K²c₂)/12 + χ(O); the divisibility is part of the contract.
pub fn chi_anticanonical(k4: i64, k2c2: i64, chi_o: i64) -> Result<i64> {
    let num = 2 * k4 + k2c2;
    if num % 12 != 0 {
        return Err(Error::Inconsistency(format!(
            "2*K4 + K2c2 = {num} is not divisible by 12"
        )));
    }
    Ok(num / 12 + chi_o)
}

/// Updates the invariant record of Z to that of the blow-up of Z along S.
pub fn blowup_update(
    inv: &FourfoldInvariants,
    s: &SurfaceCenterData,
) -> Result<FourfoldInvariants> {
    inv.validate()?;
    if (s.kzs2 + s.kskzs) % 2 != 0 {
        return Err(Error::Inconsistency(format!(
            "(K_ZS)^2 + K_S.K_ZS = {} is odd; chi(-K) would not stay integral",
            s.kzs2 + s.kskzs
        )));
    }
    let mut betti = inv.betti;
    betti[2] += 1;
    betti[3] += s.b1;
    betti[4] += s.b2();
    betti[5] += s.b1;
    betti[6] += 1;

    let out = FourfoldInvariants {
        k4: inv.k4 - s.k4_decrease(),
        k2c2: inv.k2c2 - 12 * s.chi_os + 2 * s.ks2 - 2 * s.kskzs - 2 * s.c2n,
        chi_o: inv.chi_o,
        chi_mk: inv.chi_mk - s.chi_os - (s.kzs2 + s.kskzs) / 2,
        rho: inv.rho + 1,
        betti,
        h22: inv.h22 + s.h11,
        h13: inv.h13 + s.h02,
        b3: inv.b3 + s.b1,
        chi_t: None,
        delta: None,
    };
    out.validate()?;
    Ok(out)
}

/// Center data of a section S ≅ P² of a rank-3 bundle over P² with normal
/// bundle O(n₁) ⊕ O(n₂): by adjunction K_{Z|S} = K_S − c₁(N) = (−3−n₁−n₂)·line.
pub fn center_data_section(ring: &BundleRing, normal_degrees: (i64, i64)) -> Result<SurfaceCenterData> {
    if ring.rank() != 3 {
        return Err(Error::Domain(
            "section centers are surfaces only in rank-3 bundles".into(),
        ));
    }
    let (n1, n2) = normal_degrees;
    let s = 3 + n1 + n2;
    Ok(SurfaceCenterData {
        name: format!("P2 section, normal O({n1})+O({n2})"),
        ks2: 9,
        chi_os: 1,
        c2n: n1 * n2,
        kzs2: s * s,
        kskzs: 3 * s,
        b1: 0,
        h11: 1,
        h02: 0,
    })
}

/// Center data of a complete intersection surface S = α ∩ β of two divisor
/// classes in a rank-3 bundle ring. Rationality of S (χ(O_S) = 1) is a
/// recorded assumption for general members, and its h^{1,1} must be supplied
/// by the caller, since neither follows from the intersection numbers.
pub fn center_data_complete_intersection(
    ring: &BundleRing,
    alpha: &RingElement,
    beta: &RingElement,
    h11: i64,
) -> Result<SurfaceCenterData> {
    if ring.rank() != 3 {
        return Err(Error::Domain(
            "complete-intersection centers are surfaces only in rank-3 bundles".into(),
        ));
    }
    for (label, class) in [("first", alpha), ("second", beta)] {
        let _ = class.as_divisor()?;
        if class.is_zero() {
            return Err(Error::Domain(format!("{label} class is zero: no surface is cut out")));
        }
    }
    let k = ring.canonical_class();
    let ab = alpha * beta;
    let ks = &(&k + alpha) + beta; // K_S = (K_Z + α + β)|_S by adjunction
    Ok(SurfaceCenterData {
        name: "complete intersection surface".into(),
        ks2: integrate_int(&(&ks.pow(2) * &ab))?,
        chi_os: 1,
        c2n: integrate_int(&(&ab * &ab))?,
        kzs2: integrate_int(&(&k.pow(2) * &ab))?,
        kskzs: integrate_int(&(&(&k * &ks) * &ab))?,
        b1: 0,
        h11,
        h02: 0,
    })
}
