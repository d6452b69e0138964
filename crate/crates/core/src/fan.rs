//! Rational polyhedral fans in a lattice of rank at most 4.
//!
//! A [`Fan`] stores primitive ray generators and maximal cones as sorted index
//! sets. Validation (smoothness, completeness, pairwise face intersections) is
//! computed once at construction with exact integer arithmetic and cached on
//! the value; fans are immutable afterwards.

use std::collections::HashMap;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::chow::DivisorClass;
use crate::error::{Error, Result};
use crate::linalg::{self, XorShift64};

/// A point of the ambient lattice; primitive when used as a ray.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LatticeVector(Vec<i64>);

impl LatticeVector {
    pub fn new(coords: Vec<i64>) -> Self {
        LatticeVector(coords)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_primitive(&self) -> bool {
        linalg::gcd_all(&self.0) == 1
    }
}

/// A cone of a fan, stored as the strictly increasing list of ray indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Cone(Vec<usize>);

impl Cone {
    pub fn ray_indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, ray: usize) -> bool {
        self.0.binary_search(&ray).is_ok()
    }

    fn is_strictly_increasing(&self) -> bool {
        self.0.windows(2).all(|w| w[0] < w[1])
    }
}

/// Outcome of fan validation; `diagnostics` names every offending cone.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FanValidation {
    pub smooth: bool,
    pub complete: bool,
    pub diagnostics: Vec<String>,
}

#[derive(Deserialize)]
struct RawFan {
    dim: usize,
    rays: Vec<Vec<i64>>,
    max_cones: Vec<Vec<usize>>,
}

impl TryFrom<RawFan> for Fan {
    type Error = Error;

    fn try_from(raw: RawFan) -> Result<Fan> {
        Fan::new(raw.dim, raw.rays, raw.max_cones)
    }
}

/// The combinatorial model of a toric variety: primitive rays plus maximal
/// cones, in a lattice of rank `dim` (1 ≤ dim ≤ 4).
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(try_from = "RawFan")]
pub struct Fan {
    dim: usize,
    rays: Vec<LatticeVector>,
    max_cones: Vec<Cone>,
    #[serde(skip)]
    validation: FanValidation,
}

impl PartialEq for Fan {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.rays == other.rays && self.max_cones == other.max_cones
    }
}

impl Eq for Fan {}

impl Fan {
    /// Builds a fan and runs all structural checks and validation.
    ///
    /// Structural defects (non-primitive or duplicate rays, bad indices,
    /// non-maximal cones, rays not used by any cone) are errors. Smoothness
    /// and completeness are *flags*; see [`Fan::validation`].
    pub fn new(dim: usize, rays: Vec<Vec<i64>>, max_cones: Vec<Vec<usize>>) -> Result<Fan> {
        if !(1..=4).contains(&dim) {
            return Err(Error::Structural(format!("dimension {dim} unsupported (1..=4)")));
        }
        if rays.is_empty() {
            return Err(Error::Structural("fan has no rays".into()));
        }
        for (i, r) in rays.iter().enumerate() {
            if r.len() != dim {
                return Err(Error::Structural(format!(
                    "ray {i} has {} coordinates, expected {dim}",
                    r.len()
                )));
            }
            if linalg::gcd_all(r) != 1 {
                return Err(Error::Structural(format!("non-primitive ray {r:?}")));
            }
        }
        for (i, j) in (0..rays.len()).tuple_combinations() {
            if rays[i] == rays[j] {
                return Err(Error::Structural(format!("rays {i} and {j} coincide")));
            }
        }
        if max_cones.is_empty() {
            return Err(Error::Structural("fan has no maximal cones".into()));
        }
        let cones: Vec<Cone> = max_cones.into_iter().map(Cone).collect();
        for (i, c) in cones.iter().enumerate() {
            if c.is_empty() {
                return Err(Error::Structural(format!("maximal cone {i} is empty")));
            }
            if !c.is_strictly_increasing() {
                return Err(Error::Structural(format!(
                    "maximal cone {i} indices must be strictly increasing: {:?}",
                    c.ray_indices()
                )));
            }
            if let Some(&bad) = c.ray_indices().iter().find(|&&r| r >= rays.len()) {
                return Err(Error::Structural(format!(
                    "maximal cone {i} references out-of-range ray {bad}"
                )));
            }
            if c.len() > dim {
                return Err(Error::Structural(format!(
                    "maximal cone {i} has {} rays in dimension {dim}",
                    c.len()
                )));
            }
        }
        for (i, j) in (0..cones.len()).tuple_combinations() {
            let (a, b) = (&cones[i], &cones[j]);
            if a.ray_indices().iter().all(|r| b.contains(*r)) {
                return Err(Error::Structural(format!("cone {i} is contained in cone {j}")));
            }
            if b.ray_indices().iter().all(|r| a.contains(*r)) {
                return Err(Error::Structural(format!("cone {j} is contained in cone {i}")));
            }
        }
        for ray in 0..rays.len() {
            if !cones.iter().any(|c| c.contains(ray)) {
                return Err(Error::Structural(format!("ray {ray} lies in no maximal cone")));
            }
        }

        let mut fan = Fan {
            dim,
            rays: rays.into_iter().map(LatticeVector).collect(),
            max_cones: cones,
            validation: FanValidation::default(),
        };
        fan.validation = fan.compute_validation();
        Ok(fan)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[LatticeVector] {
        &self.rays
    }

    pub fn max_cones(&self) -> &[Cone] {
        &self.max_cones
    }

    /// #rays − dim; the Picard number when the fan is smooth and complete.
    pub fn picard_number(&self) -> i64 {
        self.rays.len() as i64 - self.dim as i64
    }

    pub fn validation(&self) -> &FanValidation {
        &self.validation
    }

    pub fn is_smooth(&self) -> bool {
        self.validation.smooth
    }

    pub fn is_complete(&self) -> bool {
        self.validation.complete
    }

    pub(crate) fn require_smooth_complete(&self, what: &str) -> Result<()> {
        if !self.is_smooth() || !self.is_complete() {
            return Err(Error::UnsupportedFan(format!(
                "{what} needs a smooth complete fan (smooth: {}, complete: {})",
                self.is_smooth(),
                self.is_complete()
            )));
        }
        Ok(())
    }

    /// Indices of the maximal cones whose ray set contains `support`.
    /// `support` must be sorted.
    pub(crate) fn max_cones_containing(&self, support: &[usize]) -> Vec<usize> {
        self.max_cones
            .iter()
            .enumerate()
            .filter(|(_, c)| support.iter().all(|&r| c.contains(r)))
            .map(|(i, _)| i)
            .collect()
    }

    /// Whether `support` (sorted, distinct) spans a cone of the fan.
    pub fn spans_cone(&self, support: &[usize]) -> bool {
        !self.max_cones_containing(support).is_empty()
    }

    fn ray_matrix(&self, cone: &Cone) -> Vec<&[i64]> {
        cone.ray_indices().iter().map(|&r| self.rays[r].coords()).collect()
    }

    /// Facet (codimension-1 face) → indices of the maximal cones having it.
    pub(crate) fn facet_incidence(&self) -> HashMap<Vec<usize>, Vec<usize>> {
        let mut map: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
        for (ci, cone) in self.max_cones.iter().enumerate() {
            for skip in 0..cone.len() {
                let facet: Vec<usize> = cone
                    .ray_indices()
                    .iter()
                    .enumerate()
                    .filter(|&(k, _)| k != skip)
                    .map(|(_, &r)| r)
                    .collect();
                map.entry(facet).or_default().push(ci);
            }
        }
        map
    }

    fn compute_validation(&self) -> FanValidation {
        let mut diagnostics = Vec::new();
        let mut smooth = true;
        let mut complete = true;
        let dim = self.dim;

        // per-cone: full-dimensional, non-degenerate, unimodular
        let mut full_dim_ok = vec![false; self.max_cones.len()];
        for (i, cone) in self.max_cones.iter().enumerate() {
            let rows = self.ray_matrix(cone);
            if cone.len() < dim {
                diagnostics.push(format!(
                    "maximal cone {i} {:?} is not full-dimensional",
                    cone.ray_indices()
                ));
                complete = false;
                // smoothness of a lower-dim cone: rays extend to a lattice basis
                if !lower_dim_unimodular(&rows, dim) {
                    diagnostics.push(format!(
                        "maximal cone {i} {:?} is not smooth",
                        cone.ray_indices()
                    ));
                    smooth = false;
                }
                continue;
            }
            let d = linalg::det_i64(&rows);
            if d == 0 {
                diagnostics.push(format!(
                    "maximal cone {i} {:?} is degenerate (rays linearly dependent)",
                    cone.ray_indices()
                ));
                smooth = false;
                complete = false;
            } else {
                full_dim_ok[i] = true;
                if d.abs() != 1 {
                    diagnostics.push(format!(
                        "maximal cone {i} {:?} has determinant {d} (not unimodular)",
                        cone.ray_indices()
                    ));
                    smooth = false;
                }
            }
        }

        // pairwise: cones must intersect in the cone spanned by shared rays
        let mut overlap = false;
        for (i, j) in (0..self.max_cones.len()).tuple_combinations() {
            if !(full_dim_ok[i] && full_dim_ok[j]) {
                continue;
            }
            if !self.pair_meets_in_face(i, j) {
                diagnostics
                    .push(format!("maximal cones {i} and {j} intersect outside a common face"));
                overlap = true;
            }
        }
        if overlap {
            complete = false;
        }

        // facet pairing: on a complete fan every facet is shared by exactly two cones
        if complete {
            let incidence = self.facet_incidence();
            let mut facets: Vec<(&Vec<usize>, &Vec<usize>)> = incidence.iter().collect();
            facets.sort();
            for (facet, owners) in facets {
                if owners.len() != 2 {
                    diagnostics.push(format!(
                        "facet {facet:?} belongs to {} maximal cone(s), expected 2",
                        owners.len()
                    ));
                    complete = false;
                }
            }
        }

        // generic-ray probe: a generic point must lie in exactly one maximal cone
        if complete {
            match self.probe_generic_point() {
                Some(1) => {}
                Some(n) => {
                    diagnostics.push(format!("generic point covered by {n} maximal cones"));
                    complete = false;
                }
                None => {
                    diagnostics.push("point-location probe inconclusive".into());
                    complete = false;
                }
            }
        }

        FanValidation { smooth, complete, diagnostics }
    }

    /// Exact check that cone(σ) ∩ cone(τ) equals the cone on their shared rays,
    /// by enumerating the extreme rays of the intersection.
    fn pair_meets_in_face(&self, i: usize, j: usize) -> bool {
        let (a, b) = (&self.max_cones[i], &self.max_cones[j]);
        let shared: Vec<usize> =
            a.ray_indices().iter().copied().filter(|r| b.contains(*r)).collect();

        // row i of sign(det)·adj(B)ᵀ pairs x to (a positive multiple of) its
        // barycentric coordinate on the cone's i-th ray
        let constraints_of = |cone: &Cone| -> Vec<Vec<i128>> {
            let rows: Vec<Vec<i128>> = self
                .ray_matrix(cone)
                .iter()
                .map(|r| r.iter().map(|&x| x as i128).collect())
                .collect();
            let d = linalg::det(&rows);
            let adj = linalg::adjugate(&rows);
            let sign = if d < 0 { -1 } else { 1 };
            let n = rows.len();
            (0..n)
                .map(|i| (0..n).map(|j| sign * adj[j][i]).collect())
                .collect()
        };
        let ca = constraints_of(a);
        let cb = constraints_of(b);
        let all: Vec<&Vec<i128>> = ca.iter().chain(cb.iter()).collect();

        let satisfies_all = |w: &[i128]| {
            all.iter().all(|c| c.iter().zip(w).map(|(&ci, &wi)| ci * wi).sum::<i128>() >= 0)
        };
        // barycentric coordinates of w in cone a are proportional to ca · w
        let in_shared_face = |w: &[i128]| {
            a.ray_indices().iter().zip(ca.iter()).all(|(&ray, c)| {
                let lam: i128 = c.iter().zip(w).map(|(&ci, &wi)| ci * wi).sum();
                lam == 0 || shared.contains(&ray)
            })
        };

        // every extreme ray of the intersection has dim−1 independent active
        // constraints, so it shows up as the kernel of such a subset
        for subset in (0..all.len()).combinations(self.dim.saturating_sub(1)) {
            let rows: Vec<Vec<i128>> = subset.iter().map(|&k| all[k].clone()).collect();
            let Some(kernel) = linalg::kernel_vector(&rows, self.dim) else {
                continue;
            };
            for w in [kernel.clone(), kernel.iter().map(|&x| -x).collect()] {
                if satisfies_all(&w) && !in_shared_face(&w) {
                    return false;
                }
            }
        }
        true
    }

    /// Counts the maximal cones containing a deterministic pseudo-random
    /// point, retrying whenever the point hits a cone boundary.
    fn probe_generic_point(&self) -> Option<usize> {
        let mut rng = XorShift64::new(0x9E3779B97F4A7C15);
        'candidate: for _ in 0..64 {
            let p: Vec<i128> =
                (0..self.dim).map(|_| rng.range_i64(-999_983, 999_983) as i128).collect();
            if p.iter().all(|&x| x == 0) {
                continue;
            }
            let mut interior = 0;
            for cone in &self.max_cones {
                if cone.len() != self.dim {
                    continue;
                }
                let rows = self.ray_matrix(cone);
                // columns of the system are the cone's rays
                let cols: Vec<Vec<i64>> =
                    (0..self.dim).map(|r| rows.iter().map(|ray| ray[r]).collect()).collect();
                let col_refs: Vec<&[i64]> = cols.iter().map(|c| c.as_slice()).collect();
                let Some((nums, _den)) = linalg::solve_rational(&col_refs, &p) else {
                    continue;
                };
                if nums.iter().any(|&x| x == 0) {
                    continue 'candidate;
                }
                if nums.iter().all(|&x| x > 0) {
                    interior += 1;
                }
            }
            return Some(interior);
        }
        None
    }
}

fn lower_dim_unimodular(rows: &[&[i64]], dim: usize) -> bool {
    let k = rows.len();
    let mut g: i128 = 0;
    for cols in (0..dim).combinations(k) {
        let sub: Vec<Vec<i128>> = rows
            .iter()
            .map(|r| cols.iter().map(|&c| r[c] as i128).collect())
            .collect();
        let d = linalg::det(&sub).abs();
        g = if g == 0 { d } else { crate::linalg::gcd_i128(g, d) };
    }
    g == 1
}

/// The fan of projective n-space: standard basis rays plus their negative sum.
pub fn projective_space_fan(n: usize) -> Result<Fan> {
    if !(1..=4).contains(&n) {
        return Err(Error::Domain(format!("projective space dimension {n} not in 1..=4")));
    }
    let mut rays: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    rays.push(vec![-1; n]);
    let cones: Vec<Vec<usize>> = (0..=n)
        .map(|skip| (0..=n).filter(|&i| i != skip).collect())
        .collect();
    Fan::new(n, rays, cones)
}

/// Product of two fans; rays of `f` come first, Picard numbers add.
pub fn product_fan(f: &Fan, g: &Fan) -> Result<Fan> {
    let dim = f.dim() + g.dim();
    if dim > 4 {
        return Err(Error::Domain(format!(
            "product has dimension {dim} > 4 ({} + {})",
            f.dim(),
            g.dim()
        )));
    }
    let mut rays: Vec<Vec<i64>> = Vec::with_capacity(f.rays.len() + g.rays.len());
    for r in &f.rays {
        let mut v = r.coords().to_vec();
        v.extend(std::iter::repeat_n(0, g.dim()));
        rays.push(v);
    }
    for r in &g.rays {
        let mut v = vec![0; f.dim()];
        v.extend_from_slice(r.coords());
        rays.push(v);
    }
    let offset = f.rays.len();
    let mut cones = Vec::with_capacity(f.max_cones.len() * g.max_cones.len());
    for cf in &f.max_cones {
        for cg in &g.max_cones {
            let mut c = cf.ray_indices().to_vec();
            c.extend(cg.ray_indices().iter().map(|&r| r + offset));
            cones.push(c);
        }
    }
    Fan::new(dim, rays, cones)
}

/// Star subdivision of the cone spanned by `sigma`: inserts the primitive sum
/// of its rays and re-fans every maximal cone containing it. The toric model
/// of blowing up the invariant stratum V(σ).
pub fn star_subdivision(fan: &Fan, sigma: &[usize]) -> Result<Fan> {
    let mut sigma: Vec<usize> = sigma.to_vec();
    sigma.sort_unstable();
    sigma.dedup();
    if sigma.len() < 2 {
        return Err(Error::Domain(format!(
            "star subdivision needs a cone of dimension >= 2, got {sigma:?}"
        )));
    }
    if sigma.iter().any(|&r| r >= fan.rays.len()) {
        return Err(Error::Domain(format!("ray index out of range in {sigma:?}")));
    }
    if !fan.spans_cone(&sigma) {
        return Err(Error::Domain(format!("{sigma:?} does not span a cone of the fan")));
    }
    if !fan.is_smooth() {
        return Err(Error::UnsupportedFan("star subdivision requires a smooth fan".into()));
    }

    let mut sum = vec![0i64; fan.dim()];
    for &r in &sigma {
        for (s, &x) in sum.iter_mut().zip(fan.rays[r].coords()) {
            *s += x;
        }
    }
    let g = linalg::gcd_all(&sum);
    debug_assert_eq!(g, 1, "sum of rays of a smooth cone is primitive");
    if g == 0 {
        return Err(Error::Domain(format!("rays of {sigma:?} sum to zero")));
    }
    let sum: Vec<i64> = sum.into_iter().map(|x| x / g).collect();
    if fan.rays.iter().any(|r| r.coords() == sum.as_slice()) {
        return Err(Error::Structural(format!(
            "subdivision ray {sum:?} already present; input is not a valid fan to subdivide"
        )));
    }

    let new_ray = fan.rays.len();
    let mut rays: Vec<Vec<i64>> = fan.rays.iter().map(|r| r.coords().to_vec()).collect();
    rays.push(sum);

    let mut cones: Vec<Vec<usize>> = Vec::new();
    for cone in &fan.max_cones {
        if sigma.iter().all(|&r| cone.contains(r)) {
            for &drop in &sigma {
                let mut c: Vec<usize> =
                    cone.ray_indices().iter().copied().filter(|&r| r != drop).collect();
                c.push(new_ray);
                c.sort_unstable();
                cones.push(c);
            }
        } else {
            cones.push(cone.ray_indices().to_vec());
        }
    }
    Fan::new(fan.dim(), rays, cones)
}

/// A split projective bundle P(O(d₁) ⊕ … ⊕ O(d_r)) over P², together with the
/// correspondence from its fan to the divisor classes h (pullback of a line)
/// and ξ (tautological class, normalized by ∫ h²ξ^{r−1} = 1).
#[derive(Clone, Debug)]
pub struct SplitBundleFan {
    fan: Fan,
    degrees: Vec<i64>,
}

pub(crate) fn check_bundle_degrees(degrees: &[i64]) -> Result<()> {
    let r = degrees.len();
    if !(2..=3).contains(&r) {
        return Err(Error::Domain(format!("bundle rank {r} not in 2..=3")));
    }
    if degrees[0] != 0 {
        return Err(Error::Domain(format!(
            "degrees {degrees:?} are not normalized (d1 must be 0)"
        )));
    }
    if degrees.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::Domain(format!("degrees {degrees:?} must be non-decreasing")));
    }
    if degrees.iter().any(|&d| d < 0) {
        return Err(Error::Domain(format!("degrees {degrees:?} must be non-negative")));
    }
    Ok(())
}

/// Fan of the projectivization of O(d₁) ⊕ … ⊕ O(d_r) over P², r ∈ {2,3},
/// normalized with d₁ = 0 ≤ d₂ ≤ … ≤ d_r.
pub fn split_bundle_fan(degrees: &[i64]) -> Result<SplitBundleFan> {
    check_bundle_degrees(degrees)?;
    let r = degrees.len();
    let dim = r + 1;

    let mut rays: Vec<Vec<i64>> = Vec::with_capacity(3 + r);
    // base rays e1, e2 and the twisted lift of −e1−e2
    for i in 0..2 {
        let mut v = vec![0i64; dim];
        v[i] = 1;
        rays.push(v);
    }
    let mut twisted = vec![-1i64, -1];
    twisted.extend_from_slice(&degrees[1..]);
    rays.push(twisted);
    // fiber rays: standard basis of the fiber lattice plus their negative sum
    for j in 0..r - 1 {
        let mut v = vec![0i64; dim];
        v[2 + j] = 1;
        rays.push(v);
    }
    let mut last = vec![0i64; dim];
    for x in last.iter_mut().skip(2) {
        *x = -1;
    }
    rays.push(last);

    let base_pairs = [[0usize, 1], [0, 2], [1, 2]];
    let fiber: Vec<usize> = (3..3 + r).collect();
    let mut cones = Vec::with_capacity(3 * r);
    for bp in base_pairs {
        for skip in &fiber {
            let mut c = bp.to_vec();
            c.extend(fiber.iter().filter(|&f| f != skip));
            c.sort_unstable();
            cones.push(c);
        }
    }
    let fan = Fan::new(dim, rays, cones)?;
    debug_assert!(fan.is_smooth() && fan.is_complete());
    Ok(SplitBundleFan { fan, degrees: degrees.to_vec() })
}

impl SplitBundleFan {
    pub fn fan(&self) -> &Fan {
        &self.fan
    }

    pub fn into_fan(self) -> Fan {
        self.fan
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    /// Ray indices of the three base rays (lifts of the P² fan).
    pub fn base_ray_indices(&self) -> [usize; 3] {
        [0, 1, 2]
    }

    /// Ray indices of the fiber rays, one per summand.
    pub fn fiber_ray_indices(&self) -> Vec<usize> {
        (3..3 + self.rank()).collect()
    }

    /// h: the pullback of a line of the base.
    pub fn base_line_class(&self) -> DivisorClass {
        DivisorClass::ray(self.fan.rays().len(), 0)
    }

    /// ξ: the tautological class, normalized by ∫ h²ξ^{r−1} = 1.
    pub fn tautological_class(&self) -> DivisorClass {
        DivisorClass::ray(self.fan.rays().len(), 2 + self.rank())
    }

    /// The cones spanned by all-but-one fiber ray; their orbit closures are
    /// the coordinate sections of the bundle (pairwise disjoint, invariant).
    /// For rank 3 these are the 2-cones whose star subdivisions blow up the
    /// three sections.
    pub fn coordinate_section_cones(&self) -> Vec<Vec<usize>> {
        self.fiber_ray_indices()
            .into_iter()
            .combinations(self.rank() - 1)
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p2_fan_shape() {
        let f = projective_space_fan(2).unwrap();
        assert_eq!(f.rays().len(), 3);
        assert_eq!(f.max_cones().len(), 3);
        assert_eq!(f.rays()[0].coords(), &[1, 0]);
        assert_eq!(f.rays()[2].coords(), &[-1, -1]);
        assert!(f.is_smooth() && f.is_complete());
    }

    #[test]
    fn p4_fan_shape() {
        let f = projective_space_fan(4).unwrap();
        assert_eq!(f.rays().len(), 5);
        assert_eq!(f.max_cones().len(), 5);
        assert!(f.is_smooth() && f.is_complete());
        assert_eq!(f.picard_number(), 1);
    }

    #[test]
    fn p1_fan_shape() {
        let f = projective_space_fan(1).unwrap();
        assert_eq!(f.rays().len(), 2);
        assert_eq!(f.max_cones().len(), 2);
        assert!(f.is_smooth() && f.is_complete());
    }

    #[test]
    fn projective_space_out_of_range() {
        assert!(matches!(projective_space_fan(0), Err(Error::Domain(_))));
        assert!(matches!(projective_space_fan(5), Err(Error::Domain(_))));
    }

    #[test]
    fn products_count_cones() {
        let p2 = projective_space_fan(2).unwrap();
        let p1 = projective_space_fan(1).unwrap();
        let p2xp2 = product_fan(&p2, &p2).unwrap();
        assert_eq!(p2xp2.rays().len(), 6);
        assert_eq!(p2xp2.max_cones().len(), 9);
        assert!(p2xp2.is_smooth() && p2xp2.is_complete());
        let p1xp1 = product_fan(&p1, &p1).unwrap();
        assert_eq!(p1xp1.rays().len(), 4);
        assert_eq!(p1xp1.max_cones().len(), 4);
        assert_eq!(p2xp2.picard_number(), p2.picard_number() + p2.picard_number());
    }

    #[test]
    fn product_dimension_overflow() {
        let p4 = projective_space_fan(4).unwrap();
        let p1 = projective_space_fan(1).unwrap();
        assert!(matches!(product_fan(&p4, &p1), Err(Error::Domain(_))));
    }

    #[test]
    fn product_with_s4_fan() {
        let p2 = projective_space_fan(2).unwrap();
        let s4 = s4_fan();
        let k4 = product_fan(&p2, &s4).unwrap();
        assert_eq!(k4.rays().len(), 9);
        assert_eq!(k4.max_cones().len(), 18);
        assert!(k4.is_smooth() && k4.is_complete());
        assert_eq!(k4.picard_number(), 5);
    }

    pub(crate) fn s4_fan() -> Fan {
        // P² blown up in its three invariant points
        let mut f = projective_space_fan(2).unwrap();
        for sigma in [[0usize, 1], [0, 2], [1, 2]] {
            f = star_subdivision(&f, &sigma).unwrap();
        }
        assert_eq!(f.rays().len(), 6);
        assert_eq!(f.max_cones().len(), 6);
        f
    }

    #[test]
    fn star_subdivide_p2_at_point() {
        let p2 = projective_space_fan(2).unwrap();
        let bl = star_subdivision(&p2, &[0, 1]).unwrap();
        assert_eq!(bl.rays().len(), 4);
        assert_eq!(bl.rays()[3].coords(), &[1, 1]);
        assert_eq!(bl.max_cones().len(), 4);
        assert!(bl.is_smooth() && bl.is_complete());
        assert_eq!(bl.picard_number(), p2.picard_number() + 1);
    }

    #[test]
    fn star_subdivide_p4_along_invariant_line() {
        let p4 = projective_space_fan(4).unwrap();
        let bl = star_subdivision(&p4, &[0, 1, 2]).unwrap();
        assert_eq!(bl.rays().len(), 6);
        assert!(bl.is_smooth() && bl.is_complete());
        assert_eq!(bl.picard_number(), 2);
    }

    #[test]
    fn star_subdivision_rejects_non_cone() {
        let p2 = projective_space_fan(2).unwrap();
        // all three rays only span the whole plane, not a cone
        assert!(matches!(star_subdivision(&p2, &[0, 1, 2]), Err(Error::Domain(_))));
        assert!(matches!(star_subdivision(&p2, &[0]), Err(Error::Domain(_))));
    }

    #[test]
    fn split_bundle_fan_shape() {
        let z = split_bundle_fan(&[0, 0, 2]).unwrap();
        assert_eq!(z.fan().rays().len(), 6);
        assert_eq!(z.fan().max_cones().len(), 9);
        assert!(z.fan().is_smooth() && z.fan().is_complete());
        assert_eq!(z.fan().picard_number(), 2);
        assert_eq!(z.coordinate_section_cones(), vec![vec![3, 4], vec![3, 5], vec![4, 5]]);

        let y = split_bundle_fan(&[0, 2]).unwrap();
        assert_eq!(y.fan().dim(), 3);
        assert_eq!(y.fan().rays().len(), 5);
        assert_eq!(y.fan().max_cones().len(), 6);
    }

    #[test]
    fn split_bundle_fan_rejects_bad_degrees() {
        assert!(matches!(split_bundle_fan(&[1, 2, 3]), Err(Error::Domain(_))));
        assert!(matches!(split_bundle_fan(&[0, -1, 2]), Err(Error::Domain(_))));
        assert!(matches!(split_bundle_fan(&[0, 2, 1]), Err(Error::Domain(_))));
        assert!(matches!(split_bundle_fan(&[0]), Err(Error::Domain(_))));
        assert!(matches!(split_bundle_fan(&[0, 1, 1, 1]), Err(Error::Domain(_))));
    }

    #[test]
    fn subdividing_a_bundle_section() {
        let z = split_bundle_fan(&[0, 0, 2]).unwrap();
        let sub = star_subdivision(z.fan(), &[3, 4]).unwrap();
        assert_eq!(sub.rays().len(), 7);
        assert!(sub.is_smooth() && sub.is_complete());
        assert_eq!(sub.picard_number(), 3);
    }

    #[test]
    fn validate_flags_incomplete_fan() {
        let p4 = projective_space_fan(4).unwrap();
        let rays: Vec<Vec<i64>> = p4.rays().iter().map(|r| r.coords().to_vec()).collect();
        let cones: Vec<Vec<usize>> = p4
            .max_cones()
            .iter()
            .take(4)
            .map(|c| c.ray_indices().to_vec())
            .collect();
        let f = Fan::new(4, rays, cones).unwrap();
        assert!(f.is_smooth());
        assert!(!f.is_complete());
        assert!(f.validation().diagnostics.iter().any(|d| d.contains("facet")));
    }

    #[test]
    fn validate_rejects_non_primitive_ray() {
        let err = Fan::new(
            4,
            vec![vec![2, 0, 0, 0], vec![0, 1, 0, 0], vec![0, 0, 1, 0], vec![0, 0, 0, 1]],
            vec![vec![0, 1, 2, 3]],
        )
        .unwrap_err();
        assert!(matches!(err, Error::Structural(_)));
        assert!(err.to_string().contains("non-primitive"));
    }

    #[test]
    fn validate_flags_non_unimodular_cone() {
        // rays (1,0) and (1,2) span a singular quadratic cone
        let f = Fan::new(
            2,
            vec![vec![1, 0], vec![1, 2], vec![-1, -1]],
            vec![vec![0, 1], vec![1, 2], vec![0, 2]],
        )
        .unwrap();
        assert!(!f.is_smooth());
        assert!(f.validation().diagnostics.iter().any(|d| d.contains("determinant")));
    }

    #[test]
    fn validate_flags_overlapping_cones() {
        // two cones sharing an interior direction but no common face
        let f = Fan::new(
            2,
            vec![vec![1, 0], vec![0, 1], vec![1, 2], vec![-1, -1]],
            vec![vec![0, 1], vec![2, 3]],
        )
        .unwrap();
        assert!(!f.is_complete());
        assert!(f
            .validation()
            .diagnostics
            .iter()
            .any(|d| d.contains("outside a common face")));
    }

    #[test]
    fn fan_json_round_trip() {
        let z = split_bundle_fan(&[0, 1, 2]).unwrap().into_fan();
        let text = serde_json::to_string(&z).unwrap();
        assert!(text.starts_with("{\"dim\":4,\"rays\":[["));
        let back: Fan = serde_json::from_str(&text).unwrap();
        assert_eq!(back, z);
    }

    #[test]
    fn fan_json_rejects_unsorted_cone() {
        let text = r#"{"dim":2,"rays":[[1,0],[0,1],[-1,-1]],"max_cones":[[1,0],[1,2],[0,2]]}"#;
        let err = serde_json::from_str::<Fan>(text).unwrap_err();
        assert!(err.to_string().contains("strictly increasing"));
    }

    #[test]
    fn fan_json_accepts_any_ray_order() {
        // same P² fan with rays permuted
        let text = r#"{"dim":2,"rays":[[-1,-1],[1,0],[0,1]],"max_cones":[[0,1],[0,2],[1,2]]}"#;
        let f: Fan = serde_json::from_str(text).unwrap();
        assert!(f.is_smooth() && f.is_complete());
    }
}
