//! Exact intersection theory on smooth complete toric varieties.
//!
//! Products of invariant divisors are evaluated by Stanley–Reisner reduction:
//! a squarefree monomial whose rays span a cone is a point class, a monomial
//! whose support spans no cone vanishes, and a repeated ray is eliminated
//! through the linear equivalence it satisfies inside a maximal cone
//! containing the support. All arithmetic is exact (i128 for intersection
//! numbers, rationals for Riemann–Roch).

use std::collections::HashMap;

use itertools::Itertools;
use num::rational::BigRational;
use num::{BigInt, One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::linalg::{self, XorShift64};

/// Integer coefficient vector over the rays of a fan; represents a divisor
/// class up to linear equivalence.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DivisorClass(Vec<i64>);

impl DivisorClass {
    pub fn new(coefficients: Vec<i64>) -> Self {
        DivisorClass(coefficients)
    }

    /// The class of the invariant divisor attached to one ray.
    pub fn ray(n_rays: usize, ray: usize) -> Self {
        let mut c = vec![0; n_rays];
        c[ray] = 1;
        DivisorClass(c)
    }

    pub fn zero(n_rays: usize) -> Self {
        DivisorClass(vec![0; n_rays])
    }

    /// −K: the sum of all invariant divisors.
    pub fn anticanonical(fan: &Fan) -> Self {
        DivisorClass(vec![1; fan.rays().len()])
    }

    pub fn canonical(fan: &Fan) -> Self {
        DivisorClass(vec![-1; fan.rays().len()])
    }

    pub fn coefficients(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn scaled(&self, k: i64) -> Self {
        DivisorClass(self.0.iter().map(|&c| c * k).collect())
    }

    fn check_fan(&self, fan: &Fan) -> Result<()> {
        if self.0.len() != fan.rays().len() {
            return Err(Error::Domain(format!(
                "divisor has {} coefficients, fan has {} rays",
                self.0.len(),
                fan.rays().len()
            )));
        }
        Ok(())
    }
}

impl std::ops::Add<&DivisorClass> for &DivisorClass {
    type Output = DivisorClass;
    fn add(self, rhs: &DivisorClass) -> DivisorClass {
        assert_eq!(self.0.len(), rhs.0.len(), "divisor classes on different fans");
        DivisorClass(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl std::ops::Sub<&DivisorClass> for &DivisorClass {
    type Output = DivisorClass;
    fn sub(self, rhs: &DivisorClass) -> DivisorClass {
        assert_eq!(self.0.len(), rhs.0.len(), "divisor classes on different fans");
        DivisorClass(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl std::ops::Neg for &DivisorClass {
    type Output = DivisorClass;
    fn neg(self) -> DivisorClass {
        self.scaled(-1)
    }
}

/// A divisor class together with its fan, as stored on disk.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DivisorEnvelope {
    pub fan: Fan,
    pub divisor: Vec<i64>,
}

impl DivisorEnvelope {
    pub fn divisor_class(&self) -> Result<DivisorClass> {
        let d = DivisorClass::new(self.divisor.clone());
        d.check_fan(&self.fan)?;
        Ok(d)
    }
}

/// Intersection numbers of a curve with every ray divisor; the numerical
/// class of the curve, written against the (spanning) set of ray divisors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CurveClassVector(Vec<i64>);

impl CurveClassVector {
    pub fn pairings(&self) -> &[i64] {
        &self.0
    }

    pub fn pair(&self, divisor: &DivisorClass) -> i64 {
        self.0.iter().zip(divisor.coefficients()).map(|(a, b)| a * b).sum()
    }
}

/// How the reduction step resolves its two tie-breaks: which repeated ray is
/// eliminated and inside which maximal cone. The deterministic policy takes
/// the smallest repeated ray and the lexicographically least cone; results
/// are independent of the policy (property-tested), only bit-reproducibility
/// of the run depends on it.
#[derive(Clone, Copy, Debug, Default)]
pub enum ReductionPolicy {
    #[default]
    Deterministic,
    Randomized {
        seed: u64,
    },
}

/// A monomial of ray divisors of degree ≤ 4, packed as sorted ray indices
/// with `PAD` filling the unused slots. Keys stay on the stack, which keeps
/// the reduction loop allocation-free.
type Monomial = [u8; 4];
const PAD: u8 = u8::MAX;

fn monomial_degree(m: &Monomial) -> usize {
    m.iter().take_while(|&&x| x != PAD).count()
}

fn sort4(m: &mut Monomial) {
    for i in 1..4 {
        let mut j = i;
        while j > 0 && m[j - 1] > m[j] {
            m.swap(j - 1, j);
            j -= 1;
        }
    }
}

fn monomial_concat(a: &Monomial, b: &Monomial) -> Monomial {
    let mut out = [PAD; 4];
    let mut k = 0;
    for &x in a.iter().chain(b.iter()) {
        if x != PAD {
            assert!(k < 4, "cycle product exceeds degree 4");
            out[k] = x;
            k += 1;
        }
    }
    sort4(&mut out);
    out
}

fn check_ray_count(fan: &Fan) -> Result<()> {
    if fan.rays().len() >= PAD as usize {
        return Err(Error::UnsupportedFan(format!(
            "{} rays exceed the supported maximum of {}",
            fan.rays().len(),
            PAD as usize - 1
        )));
    }
    Ok(())
}

struct Reducer<'a> {
    fan: &'a Fan,
    memo: HashMap<Monomial, i128>,
    rng: Option<XorShift64>,
}

impl<'a> Reducer<'a> {
    fn new(fan: &'a Fan, policy: ReductionPolicy) -> Self {
        let rng = match policy {
            ReductionPolicy::Deterministic => None,
            ReductionPolicy::Randomized { seed } => Some(XorShift64::new(seed)),
        };
        Reducer { fan, memo: HashMap::new(), rng }
    }

    fn pick<T: Clone>(&mut self, candidates: &[T]) -> T {
        match &mut self.rng {
            None => candidates[0].clone(),
            Some(rng) => candidates[rng.below(candidates.len())].clone(),
        }
    }

    /// Integral of the monomial of ray divisors given by the sorted index
    /// multiset `m` (degree == dim).
    fn reduce(&mut self, m: Monomial) -> Result<i128> {
        if let Some(&v) = self.memo.get(&m) {
            return Ok(v);
        }
        let degree = monomial_degree(&m);
        let support: Vec<usize> =
            m[..degree].iter().map(|&x| x as usize).dedup().collect();
        let candidates = self.fan.max_cones_containing(&support);
        let value = if candidates.is_empty() {
            // support spans no cone: Stanley-Reisner relation kills it
            0
        } else if support.len() == degree {
            // squarefree on a cone of full dimension: a reduced point
            1
        } else {
            let repeated: Vec<u8> = m[..degree]
                .iter()
                .copied()
                .dedup_with_count()
                .filter(|&(n, _)| n > 1)
                .map(|(_, r)| r)
                .collect();
            let ray = self.pick(&repeated) as usize;

            let mut cones: Vec<&[usize]> = candidates
                .iter()
                .map(|&ci| self.fan.max_cones()[ci].ray_indices())
                .collect();
            cones.sort();
            let cone = self.pick(&cones).to_vec();

            // dual-basis covector of `ray` in the chosen smooth cone
            let rows: Vec<&[i64]> =
                cone.iter().map(|&r| self.fan.rays()[r].coords()).collect();
            let rhs: Vec<i128> =
                cone.iter().map(|&r| i128::from(r == ray)).collect();
            let covector = linalg::solve_integer(&rows, &rhs).ok_or_else(|| {
                Error::Inconsistency(format!(
                    "no integral dual covector for ray {ray} in cone {cone:?}"
                ))
            })?;

            // D_ray ~ −Σ_{ρ' ∉ cone} ⟨covector, v_ρ'⟩ D_ρ'
            let pos = m.iter().position(|&r| r as usize == ray).expect("repeated ray present");
            let mut acc: i128 = 0;
            for other in 0..self.fan.rays().len() {
                if cone.contains(&other) {
                    continue;
                }
                let pairing: i128 = covector
                    .iter()
                    .zip(self.fan.rays()[other].coords())
                    .map(|(&c, &v)| c * v as i128)
                    .sum();
                if pairing == 0 {
                    continue;
                }
                let mut child = m;
                child[pos] = other as u8;
                sort4(&mut child);
                let sub = self.reduce(child)?;
                acc = acc
                    .checked_add(
                        (-pairing)
                            .checked_mul(sub)
                            .ok_or(Error::Overflow("intersection reduction"))?,
                    )
                    .ok_or(Error::Overflow("intersection reduction"))?;
            }
            acc
        };
        self.memo.insert(m, value);
        Ok(value)
    }

    /// Integral of a formal sum of degree-dim monomials.
    fn integrate(&mut self, terms: &Cycle) -> Result<i128> {
        let mut acc: i128 = 0;
        let mut ordered: Vec<(&Monomial, &i128)> = terms.iter().collect();
        ordered.sort();
        for (&m, &coeff) in ordered {
            if coeff == 0 {
                continue;
            }
            let v = self.reduce(m)?;
            acc = acc
                .checked_add(coeff.checked_mul(v).ok_or(Error::Overflow("integration"))?)
                .ok_or(Error::Overflow("integration"))?;
        }
        Ok(acc)
    }
}

type Cycle = HashMap<Monomial, i128>;

fn cycle_one() -> Cycle {
    HashMap::from([([PAD; 4], 1)])
}

fn cycle_mul(a: &Cycle, b: &Cycle) -> Result<Cycle> {
    let mut out: Cycle = HashMap::with_capacity(a.len() * b.len());
    for (ma, &ca) in a {
        for (mb, &cb) in b {
            let m = monomial_concat(ma, mb);
            let c = ca.checked_mul(cb).ok_or(Error::Overflow("cycle product"))?;
            let e = out.entry(m).or_insert(0);
            *e = e.checked_add(c).ok_or(Error::Overflow("cycle product"))?;
        }
    }
    Ok(out)
}

fn divisor_cycle(d: &DivisorClass) -> Cycle {
    d.coefficients()
        .iter()
        .enumerate()
        .filter(|&(_, &c)| c != 0)
        .map(|(r, &c)| ([r as u8, PAD, PAD, PAD], c as i128))
        .collect()
}

fn divisor_power(d: &DivisorClass, k: usize) -> Result<Cycle> {
    let base = divisor_cycle(d);
    let mut acc = cycle_one();
    for _ in 0..k {
        acc = cycle_mul(&acc, &base)?;
    }
    Ok(acc)
}

/// k-th elementary symmetric function of all ray divisors: the k-th Chern
/// class of the tangent bundle.
fn chern_cycle(fan: &Fan, k: usize) -> Cycle {
    (0..fan.rays().len() as u8)
        .combinations(k)
        .map(|m| {
            let mut key = [PAD; 4];
            key[..k].copy_from_slice(&m);
            (key, 1)
        })
        .collect()
}

fn to_i64(x: i128, what: &'static str) -> Result<i64> {
    i64::try_from(x).map_err(|_| Error::Overflow(what))
}

/// Intersection number of dim-many divisor classes (four on a fourfold).
pub fn intersection_number(fan: &Fan, divisors: &[DivisorClass]) -> Result<i64> {
    intersection_number_with_policy(fan, divisors, ReductionPolicy::Deterministic)
}

/// Same as [`intersection_number`] but with an explicit reduction policy; the
/// result never depends on the policy.
pub fn intersection_number_with_policy(
    fan: &Fan,
    divisors: &[DivisorClass],
    policy: ReductionPolicy,
) -> Result<i64> {
    fan.require_smooth_complete("intersection numbers")?;
    check_ray_count(fan)?;
    if divisors.len() != fan.dim() {
        return Err(Error::Domain(format!(
            "need {} divisor classes on a {}-fold, got {}",
            fan.dim(),
            fan.dim(),
            divisors.len()
        )));
    }
    let mut cycle = cycle_one();
    for d in divisors {
        d.check_fan(fan)?;
        cycle = cycle_mul(&cycle, &divisor_cycle(d))?;
    }
    let mut reducer = Reducer::new(fan, policy);
    to_i64(reducer.integrate(&cycle)?, "intersection number")
}

/// The degree-4 Chern pairings of a smooth complete toric fourfold.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ChernNumbers {
    pub c1_4: i64,
    pub c1_2_c2: i64,
    pub c1_c3: i64,
    pub c2_2: i64,
    pub c4: i64,
}

pub fn chern_numbers(fan: &Fan) -> Result<ChernNumbers> {
    fan.require_smooth_complete("Chern numbers")?;
    check_ray_count(fan)?;
    if fan.dim() != 4 {
        return Err(Error::UnsupportedFan(format!(
            "Chern numbers are computed on fourfolds, got dim {}",
            fan.dim()
        )));
    }
    let c1 = chern_cycle(fan, 1);
    let c2 = chern_cycle(fan, 2);
    let c3 = chern_cycle(fan, 3);
    let c4 = chern_cycle(fan, 4);
    let c1_2 = cycle_mul(&c1, &c1)?;
    let mut reducer = Reducer::new(fan, ReductionPolicy::Deterministic);
    let c1_4 = reducer.integrate(&cycle_mul(&c1_2, &c1_2)?)?;
    let c1_2_c2 = reducer.integrate(&cycle_mul(&c1_2, &c2)?)?;
    let c1_c3 = reducer.integrate(&cycle_mul(&c1, &c3)?)?;
    let c2_2 = reducer.integrate(&cycle_mul(&c2, &c2)?)?;
    let c4 = reducer.integrate(&c4)?;
    if c4 != fan.max_cones().len() as i128 {
        return Err(Error::Inconsistency(format!(
            "c4 = {c4} differs from the number of maximal cones {}",
            fan.max_cones().len()
        )));
    }
    Ok(ChernNumbers {
        c1_4: to_i64(c1_4, "c1^4")?,
        c1_2_c2: to_i64(c1_2_c2, "c1^2.c2")?,
        c1_c3: to_i64(c1_c3, "c1.c3")?,
        c2_2: to_i64(c2_2, "c2^2")?,
        c4: to_i64(c4, "c4")?,
    })
}

fn big(x: i128) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

fn factorial(k: usize) -> BigRational {
    BigRational::from_integer((1..=k).map(BigInt::from).product::<BigInt>().max(BigInt::one()))
}

/// χ(O(D)) by Hirzebruch–Riemann–Roch with the Todd class, in exact rational
/// arithmetic; a non-integral result is reported as an inconsistency of the
/// intersection engine.
pub fn chi_divisor(fan: &Fan, d: &DivisorClass) -> Result<i64> {
    fan.require_smooth_complete("Riemann-Roch")?;
    check_ray_count(fan)?;
    d.check_fan(fan)?;
    let n = fan.dim();

    // td_j as rational combinations of products of Chern classes
    let e: Vec<Cycle> = (0..=n).map(|k| chern_cycle(fan, k)).collect();
    let td: Vec<Vec<(BigRational, Cycle)>> = {
        let mut t: Vec<Vec<(BigRational, Cycle)>> = Vec::with_capacity(n + 1);
        t.push(vec![(big(1), cycle_one())]);
        if n >= 1 {
            t.push(vec![(big(1) / big(2), e[1].clone())]);
        }
        if n >= 2 {
            t.push(vec![
                (big(1) / big(12), cycle_mul(&e[1], &e[1])?),
                (big(1) / big(12), e[2].clone()),
            ]);
        }
        if n >= 3 {
            t.push(vec![(big(1) / big(24), cycle_mul(&e[1], &e[2])?)]);
        }
        if n >= 4 {
            let e1_2 = cycle_mul(&e[1], &e[1])?;
            t.push(vec![
                (big(-1) / big(720), cycle_mul(&e1_2, &e1_2)?),
                (big(4) / big(720), cycle_mul(&e1_2, &e[2])?),
                (big(3) / big(720), cycle_mul(&e[2], &e[2])?),
                (big(1) / big(720), cycle_mul(&e[1], &e[3])?),
                (big(-1) / big(720), e[4].clone()),
            ]);
        }
        t
    };

    let mut reducer = Reducer::new(fan, ReductionPolicy::Deterministic);
    let mut chi = BigRational::zero();
    for k in 0..=n {
        let dk = divisor_power(d, k)?;
        for (coeff, part) in &td[n - k] {
            let pairing = reducer.integrate(&cycle_mul(&dk, part)?)?;
            chi += coeff / factorial(k) * big(pairing);
        }
    }
    if !chi.is_integer() {
        return Err(Error::Inconsistency(format!("non-integral chi(O(D)) = {chi}")));
    }
    chi.to_integer().to_i64().ok_or(Error::Overflow("chi(O(D))"))
}

/// χ of the tangent bundle via the toric Euler sequence:
/// χ(T) = Σ_ρ χ(O(D_ρ)) − ρ_X.
pub fn chi_tangent(fan: &Fan) -> Result<i64> {
    fan.require_smooth_complete("chi of the tangent bundle")?;
    let n_rays = fan.rays().len();
    let mut acc: i64 = 0;
    for ray in 0..n_rays {
        acc += chi_divisor(fan, &DivisorClass::ray(n_rays, ray))?;
    }
    Ok(acc - fan.picard_number())
}

/// Betti numbers (b₀, …, b_{2·dim}) from the h-vector of the fan's face
/// numbers; odd entries vanish.
pub fn betti_numbers(fan: &Fan) -> Result<Vec<i64>> {
    fan.require_smooth_complete("Betti numbers")?;
    let d = fan.dim();
    // f[k] = number of cones with k rays; f[0] = 1 for the origin
    let mut faces: Vec<std::collections::HashSet<Vec<usize>>> = vec![Default::default(); d + 1];
    for cone in fan.max_cones() {
        for k in 1..=d {
            for sub in cone.ray_indices().iter().copied().combinations(k) {
                faces[k].insert(sub);
            }
        }
    }
    let f: Vec<i128> = (0..=d)
        .map(|k| if k == 0 { 1 } else { faces[k].len() as i128 })
        .collect();
    let binom = |n: i128, k: i128| -> i128 {
        if k < 0 || k > n {
            return 0;
        }
        let mut acc = 1i128;
        for i in 0..k {
            acc = acc * (n - i) / (i + 1);
        }
        acc
    };
    let mut betti = vec![0i64; 2 * d + 1];
    for k in 0..=d {
        let mut h = 0i128;
        for j in 0..=k {
            let sign = if (k - j) % 2 == 0 { 1 } else { -1 };
            h += sign * binom((d - j) as i128, (k - j) as i128) * f[j];
        }
        betti[2 * k] = to_i64(h, "betti")?;
    }
    Ok(betti)
}

/// The walls of a complete fan: codimension-1 cones shared by two maximal
/// cones, each carrying an invariant curve.
pub fn walls(fan: &Fan) -> Result<Vec<Vec<usize>>> {
    fan.require_smooth_complete("wall enumeration")?;
    let mut out: Vec<Vec<usize>> = fan
        .facet_incidence()
        .into_iter()
        .filter(|(_, owners)| owners.len() == 2)
        .map(|(facet, _)| facet)
        .collect();
    out.sort();
    Ok(out)
}

/// Numerical class of the invariant curve V(τ) of a wall τ, as the vector of
/// its intersection numbers with every ray divisor.
pub fn wall_curve_class(fan: &Fan, tau: &[usize]) -> Result<CurveClassVector> {
    fan.require_smooth_complete("wall curve classes")?;
    let mut tau = tau.to_vec();
    tau.sort_unstable();
    tau.dedup();
    if tau.len() + 1 != fan.dim() {
        return Err(Error::Domain(format!(
            "{tau:?} is not a wall: expected {} rays",
            fan.dim() - 1
        )));
    }
    let owners = fan.max_cones_containing(&tau);
    if owners.len() != 2 {
        return Err(Error::Domain(format!(
            "{tau:?} is not a wall: contained in {} maximal cones",
            owners.len()
        )));
    }
    let sigma = fan.max_cones()[owners[0]].ray_indices();
    let other = fan.max_cones()[owners[1]].ray_indices();
    let u = *sigma.iter().find(|r| !tau.contains(r)).expect("wall has a complement ray");
    let u_prime = *other.iter().find(|r| !tau.contains(r)).expect("wall has a complement ray");

    // wall relation: v_u + v_{u'} = Σ_{ρ ∈ τ} b_ρ v_ρ; expand v_{u'} over
    // the basis formed by σ's rays (rays as columns of the system)
    let cols: Vec<Vec<i64>> = (0..fan.dim())
        .map(|coord| sigma.iter().map(|&r| fan.rays()[r].coords()[coord]).collect())
        .collect();
    let col_refs: Vec<&[i64]> = cols.iter().map(|c| c.as_slice()).collect();
    let rhs: Vec<i128> =
        fan.rays()[u_prime].coords().iter().map(|&x| x as i128).collect();
    let coeffs = linalg::solve_integer(&col_refs, &rhs)
        .ok_or_else(|| Error::Inconsistency("wall relation is not integral".into()))?;

    let mut pairings = vec![0i64; fan.rays().len()];
    pairings[u] = 1;
    pairings[u_prime] = 1;
    for (&ray, &c) in sigma.iter().zip(&coeffs) {
        if ray == u {
            if c != -1 {
                return Err(Error::Inconsistency(format!(
                    "opposite ray has coefficient {c} across wall {tau:?}, expected -1"
                )));
            }
        } else {
            pairings[ray] = to_i64(-c, "wall pairing")?;
        }
    }
    Ok(CurveClassVector(pairings))
}

/// Nef and ample flags of a divisor by the toric Kleiman criterion: pairing
/// with every wall curve.
pub fn nef_ample_flags(fan: &Fan, d: &DivisorClass) -> Result<(bool, bool)> {
    fan.require_smooth_complete("nef/ample test")?;
    d.check_fan(fan)?;
    let mut nef = true;
    let mut ample = true;
    for tau in walls(fan)? {
        let pairing = wall_curve_class(fan, &tau)?.pair(d);
        nef &= pairing >= 0;
        ample &= pairing > 0;
    }
    Ok((nef, ample))
}

/// Whether −K pairs positively with every wall curve.
pub fn is_fano(fan: &Fan) -> Result<bool> {
    Ok(nef_ample_flags(fan, &DivisorClass::anticanonical(fan))?.1)
}

/// Lefschetz defect over the invariant divisors: for each ray ρ the span of
/// the classes of wall curves contained in D_ρ is N₁(D_ρ, X); the defect is
/// the maximal codimension of these spans. On the fans in this catalog the
/// maximum over invariant divisors is the Lefschetz defect itself.
pub fn lefschetz_defect(fan: &Fan) -> Result<i64> {
    fan.require_smooth_complete("Lefschetz defect")?;
    let rho = fan.picard_number();
    let wall_list = walls(fan)?;
    let classes: Vec<(Vec<usize>, CurveClassVector)> = wall_list
        .into_iter()
        .map(|tau| {
            let class = wall_curve_class(fan, &tau)?;
            Ok((tau, class))
        })
        .collect::<Result<_>>()?;
    let mut defect = 0;
    for ray in 0..fan.rays().len() {
        let spanning: Vec<Vec<i64>> = classes
            .iter()
            .filter(|(tau, _)| tau.contains(&ray))
            .map(|(_, c)| c.pairings().to_vec())
            .collect();
        let rank = linalg::rank(&spanning) as i64;
        defect = defect.max(rho - rank);
    }
    Ok(defect)
}

/// Whether two divisor classes differ by an integral linear equivalence, i.e.
/// by a combination of the relation vectors (⟨m, v_ρ⟩)_ρ.
pub fn numerically_equal(fan: &Fan, a: &DivisorClass, b: &DivisorClass) -> Result<bool> {
    fan.require_smooth_complete("numerical comparison")?;
    a.check_fan(fan)?;
    b.check_fan(fan)?;
    let diff: Vec<i128> = a
        .coefficients()
        .iter()
        .zip(b.coefficients())
        .map(|(&x, &y)| (x - y) as i128)
        .collect();
    // solve ⟨m, v_ρ⟩ = diff_ρ on the rays of one smooth cone, then check all
    let basis = fan.max_cones()[0].ray_indices();
    let rows: Vec<&[i64]> = basis.iter().map(|&r| fan.rays()[r].coords()).collect();
    let rhs: Vec<i128> = basis.iter().map(|&r| diff[r]).collect();
    let Some(m) = linalg::solve_integer(&rows, &rhs) else {
        return Ok(false);
    };
    Ok((0..fan.rays().len()).all(|r| {
        let pairing: i128 = m
            .iter()
            .zip(fan.rays()[r].coords())
            .map(|(&c, &v)| c * v as i128)
            .sum();
        pairing == diff[r]
    }))
}
