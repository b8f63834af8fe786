//! σ-finite morphisms of curve presentations in projection-to-base normal
//! form: fibers, ramification, divisor pullback, the multiplicity identity
//! deg(φ*(y)) = dl(X/Y) (and its |Σ|-weighted version), σ-free ranks, and
//! the difference Chinese remainder checker.

use crate::curve::{
    check_nonsingular, enumerate_chains, point_fixedness, valuation, ClosedPoint,
    CurvePresentation, CurveSigma, NonsingularVerdict,
};
use crate::diffring::{DiffPolyRing, FixedPrime, SigmaIdeal};
use crate::divisor::Divisor;
use crate::error::{KernelError, Result};
use crate::extensions::ExtensionTower;
use crate::ground::DiffGroundField;
use crate::ideal::{ideal_intersection, ideal_membership, Membership};
use crate::multipoly::MPoly;
use crate::rig::Nat;
use crate::scalar::{FieldKind, RatFun, Scalar, UPoly};

/// A σ-finite morphism X → Y where Y is the base curve of X's presentation
/// and the ring map is the inclusion of the base coordinates. An optional
/// finite set Σ of level-0 lifts of σ turns it into a Σ-covering.
#[derive(Clone, Debug)]
pub struct SigmaFiniteMorphism {
    pub source: CurvePresentation,
    /// level-0 σ-lifts (per-generator images); None = plain morphism
    pub sigma_lifts: Option<Vec<Vec<MPoly>>>,
}

impl SigmaFiniteMorphism {
    pub fn new(source: CurvePresentation) -> SigmaFiniteMorphism {
        SigmaFiniteMorphism { source, sigma_lifts: None }
    }

    pub fn with_lifts(source: CurvePresentation, lifts: Vec<Vec<MPoly>>) -> SigmaFiniteMorphism {
        SigmaFiniteMorphism { source, sigma_lifts: Some(lifts) }
    }

    fn lift_count(&self) -> u64 {
        self.sigma_lifts.as_ref().map(|l| l.len() as u64).unwrap_or(1)
    }
}

/// Embed a ground scalar into a larger rational-function kind.
fn embed_const(c: &Scalar, kind: &FieldKind) -> Scalar {
    if c.field() == *kind {
        return c.clone();
    }
    let FieldKind::RatFun(inner) = kind else {
        panic!("cannot embed into a smaller field");
    };
    let lifted = embed_const(c, inner);
    Scalar::from_rat_fun(RatFun::new(
        UPoly::constant(lifted),
        UPoly::one(inner),
    ))
}

/// Lift a scalar of the source ground field into the relative function
/// field K(Y) = k(y): the source variable t stays the outer variable.
fn lift_ground_scalar(c: &Scalar, rel_kind: &FieldKind) -> Scalar {
    match c {
        Scalar::RatFun(r) => {
            let FieldKind::RatFun(inner) = rel_kind else {
                panic!("relative kind must be a rational function field");
            };
            let num = UPoly::from_coeffs(
                inner,
                r.num.coeffs.iter().map(|a| embed_const(a, inner)).collect(),
            );
            let den = UPoly::from_coeffs(
                inner,
                r.den.coeffs.iter().map(|a| embed_const(a, inner)).collect(),
            );
            Scalar::from_rat_fun(RatFun::new(num, den))
        }
        _ => embed_const(c, rel_kind),
    }
}

/// The relative extension tower K(X)/K(Y): base coordinates become ground
/// scalars, the remaining generators keep their prolongation relations.
pub fn relative_tower(m: &SigmaFiniteMorphism) -> Result<ExtensionTower> {
    let src = &m.source;
    let src_kind = &src.ring.ground.kind;
    if src.base_gens != 1 {
        return Err(KernelError::Unsupported(
            "relative tower needs a single base coordinate".into(),
        ));
    }
    // K(Y) = k(y); when k is itself k0(t) keep t outermost so the σ-rule
    // still shifts it
    let (rel_kind, y_scalar) = match src_kind {
        FieldKind::RatFun(inner) => {
            let mid = FieldKind::RatFun(inner.clone());
            let kind = FieldKind::RatFun(Box::new(mid.clone()));
            let y = embed_const(&Scalar::t_var(&mid), &kind);
            (kind, y)
        }
        _ => {
            let kind = FieldKind::RatFun(Box::new(src_kind.clone()));
            (kind.clone(), Scalar::t_var(&kind))
        }
    };
    let ground = DiffGroundField { kind: rel_kind.clone(), sigma: src.ring.ground.sigma.clone() };
    let names: Vec<&str> = src
        .ring
        .gen_names
        .iter()
        .skip(src.base_gens)
        .map(|s| s.as_str())
        .collect();
    let ring = DiffPolyRing::new(ground, &names);

    let map_poly = |p: &MPoly| -> MPoly {
        let mut out = MPoly::zero(&rel_kind);
        for (e, c) in &p.terms {
            let mut term = MPoly::constant(lift_ground_scalar(c, &rel_kind));
            for (i, &exp) in e.iter().enumerate() {
                if exp == 0 {
                    continue;
                }
                let v = &p.vars[i];
                let j = v.key.0 as usize;
                if j < src.base_gens {
                    term = term.mul(&MPoly::constant(y_scalar.pow(exp)));
                } else {
                    let w = ring.var(j - src.base_gens, v.key.1);
                    term = term.mul(&MPoly::var(&rel_kind, w).pow(exp));
                }
            }
            out = out.add(&term);
        }
        out
    };

    let mut relations: Vec<MPoly> = Vec::new();
    for r in &src.relations {
        // skip pure base rules (they collapse into the ground scalars)
        let touches_upper = r.vars.iter().any(|v| (v.key.0 as usize) >= src.base_gens);
        if touches_upper {
            relations.push(map_poly(r));
        }
    }
    if let CurveSigma::Level0(images) = &src.sigma {
        for j in src.base_gens..src.ring.gen_names.len() {
            let v1 = ring.var_poly(j - src.base_gens, 1);
            let img = map_poly(&images[j]);
            relations.push(v1.sub(&img));
        }
    }
    Ok(ExtensionTower::new(ring, relations))
}

/// e_x(π) = v_x of the pulled-back uniformizer of the image point.
pub fn ramification_index(
    m: &SigmaFiniteMorphism,
    x: &ClosedPoint,
) -> Result<i64> {
    let t_y = x.base_prime[0].clone();
    let one = MPoly::one(&m.source.ring.ground.kind);
    valuation(&m.source, x, &t_y, &one)
}

#[derive(Clone, Debug)]
pub struct FiberPoint {
    pub point: ClosedPoint,
    pub e: i64,
    pub residue_dl: u64,
    /// number of lifts in Σ fixing the point (1 for plain morphisms)
    pub stabilizer: u64,
}

#[derive(Clone, Debug)]
pub struct FiberReport {
    pub base: String,
    pub points: Vec<FiberPoint>,
    pub empty: bool,
    pub warnings: Vec<String>,
}

/// The fiber over a base prime: σ-fixed chains (or Σ-fixed chains for
/// Σ-morphisms) with ramification indices and residue limit degrees.
pub fn fiber(
    m: &SigmaFiniteMorphism,
    y_prime: &[MPoly],
    depth: u32,
    effort: u64,
) -> Result<FiberReport> {
    let src = &m.source;
    let chains = enumerate_chains(src, y_prime, depth, effort)?;
    let mut points = Vec::new();
    let mut warnings = Vec::new();
    for ch in chains {
        let stabilizer = match &m.sigma_lifts {
            None => match ch.fixedness {
                FixedPrime::Fixed => 1u64,
                FixedPrime::NotFixed => continue,
                FixedPrime::UndecidedAtBound => {
                    warnings.push(format!("fixedness undecided at {}", ch.key()));
                    1
                }
            },
            Some(lifts) => {
                let mut count = 0u64;
                for lift in lifts {
                    let mut probe = src.clone();
                    probe.sigma = CurveSigma::Level0(lift.clone());
                    if point_fixedness(&probe, y_prime, &ch.chain, depth, effort)
                        == FixedPrime::Fixed
                    {
                        count += 1;
                    }
                }
                if count == 0 {
                    continue;
                }
                count
            }
        };
        match check_nonsingular(src, &ch, depth)? {
            NonsingularVerdict::DVRCertificate(_) => {}
            NonsingularVerdict::Singular { witness, .. } => {
                warnings.push(format!("singular fiber point {}: {}", ch.key(), witness));
                continue;
            }
            NonsingularVerdict::Undetermined { reason } => {
                warnings.push(format!("undetermined fiber point {}: {}", ch.key(), reason));
                continue;
            }
        }
        let e = ramification_index(m, &ch)?;
        let residue_dl = ch.residue_dl();
        warnings.extend(ch.warnings.clone());
        points.push(FiberPoint { point: ch, e, residue_dl, stabilizer });
    }
    points.sort_by_key(|p| p.point.key());
    let base: Vec<String> = y_prime.iter().map(|p| format!("{}", p)).collect();
    Ok(FiberReport {
        base: base.join(", "),
        empty: points.is_empty(),
        points,
        warnings,
    })
}

/// π*(D) by linearity over the fibers of the support.
pub fn pullback(
    m: &SigmaFiniteMorphism,
    support: &[(Vec<MPoly>, i64)],
    depth: u32,
    effort: u64,
) -> Result<Divisor> {
    let mut out = Divisor::zero();
    for (y_prime, n) in support {
        let fb = fiber(m, y_prime, depth, effort)?;
        if fb.empty && *n != 0 {
            return Err(KernelError::Unsupported(format!(
                "empty fiber over ({})",
                fb.base
            )));
        }
        for fp in &fb.points {
            out.add_point(&fp.point, n * fp.e * fp.stabilizer as i64);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MultiplicityVerdict {
    Match,
    Mismatch,
    EmptyFiber,
    Undetermined,
}

#[derive(Clone, Debug)]
pub struct MultiplicityReport {
    pub lhs: i64,
    pub rhs: i64,
    pub verdict: MultiplicityVerdict,
    /// (point key, e, residue dl, stabilizer size)
    pub breakdown: Vec<(String, i64, u64, u64)>,
    pub outside_hypotheses: bool,
    pub warnings: Vec<String>,
}

/// Check deg(φ*(y)) = |Σ|·dl(X/Y) at one base point. Both sides are
/// computed, never asserted; Mismatch is a first-class outcome.
pub fn verify_multiplicity(
    m: &SigmaFiniteMorphism,
    y_prime: &[MPoly],
    depth: u32,
    window: u32,
    effort: u64,
) -> Result<MultiplicityReport> {
    let fb = fiber(m, y_prime, depth, effort)?;
    let mut warnings = fb.warnings.clone();
    let lhs: i64 = fb
        .points
        .iter()
        .map(|p| p.e * p.stabilizer as i64 * p.residue_dl as i64)
        .sum();
    let breakdown = fb
        .points
        .iter()
        .map(|p| (p.point.key(), p.e, p.residue_dl, p.stabilizer))
        .collect();

    let rel = relative_tower(m)?;
    let (dl, seq) = rel.limit_degree(depth.max(2), window)?;
    for w in &seq.warnings {
        warnings.push(format!("unverified step {}", w.var));
    }
    let Nat::Fin(dl) = dl else {
        return Err(KernelError::Unsupported("infinite relative limit degree".into()));
    };
    // the benign normal form realizes the limit degree at every level;
    // anything else runs outside the theorem's hypotheses
    let outside_hypotheses = seq.d.iter().any(|d| *d != Nat::Fin(dl));
    let rhs = (m.lift_count() * dl) as i64;

    let verdict = if fb.empty {
        MultiplicityVerdict::EmptyFiber
    } else if !warnings.is_empty() {
        MultiplicityVerdict::Undetermined
    } else if lhs == rhs {
        MultiplicityVerdict::Match
    } else {
        MultiplicityVerdict::Mismatch
    };
    Ok(MultiplicityReport { lhs, rhs, verdict, breakdown, outside_hypotheses, warnings })
}

/// Per-level module ranks of the fiber-local intersection ring: the step
/// degrees of the relative tower, whose eventual value is dl(X/Y).
pub fn sigma_free_rank(
    m: &SigmaFiniteMorphism,
    depth: u32,
    window: u32,
) -> Result<Vec<u64>> {
    let rel = relative_tower(m)?;
    let seq = rel.degree_sequence(depth.max(2), window)?;
    seq.d
        .iter()
        .map(|d| match d {
            Nat::Fin(v) => Ok(*v),
            Nat::Inf => Err(KernelError::Unsupported("rank is not finite".into())),
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeparationVerdict {
    Separated,
    NotSeparated,
    Undecided,
}

#[derive(Clone, Debug)]
pub struct CrtReport {
    /// pairwise weak-separation verdicts ((i, j), verdict)
    pub separation: Vec<((usize, usize), SeparationVerdict)>,
    /// kernel generators checked against every component
    pub kernel_ok: bool,
    /// idempotent-style preimages found for every component
    pub surjective_ok: bool,
    pub depth: u32,
}

/// Difference CRT check: weak separation via perfect closures reaching 1,
/// kernel = intersection at the truncation, and almost-surjectivity via
/// explicit preimages of the component units.
pub fn crt_check(
    ring: &DiffPolyRing,
    relations: &[MPoly],
    primes: &[Vec<MPoly>],
    depth: u32,
    effort: u64,
) -> Result<CrtReport> {
    let closed_relations = SigmaIdeal::new(ring.clone(), relations.to_vec())
        .sigma_close(depth)
        .gens;
    let component = |p: &[MPoly]| -> Vec<MPoly> {
        let mut g = p.to_vec();
        g.extend(closed_relations.iter().cloned());
        SigmaIdeal::new(ring.clone(), g).sigma_close(depth).gens
    };

    let one = MPoly::one(&ring.ground.kind);
    let mut separation = Vec::new();
    let mut all_separated = true;
    for i in 0..primes.len() {
        for j in (i + 1)..primes.len() {
            let mut gens = primes[i].clone();
            gens.extend(primes[j].iter().cloned());
            gens.extend(closed_relations.iter().cloned());
            let sum = SigmaIdeal::new(ring.clone(), gens);
            let verdict = if sum.contains(&one, effort).is_in() {
                SeparationVerdict::Separated
            } else {
                let closed = sum.perfect_close(depth, effort);
                match closed.contains(&one, effort) {
                    Membership::In { .. } => SeparationVerdict::Separated,
                    Membership::NotIn { .. } => SeparationVerdict::NotSeparated,
                    Membership::UndecidedAtBound { .. } => SeparationVerdict::Undecided,
                }
            };
            if verdict != SeparationVerdict::Separated {
                all_separated = false;
            }
            separation.push(((i, j), verdict));
        }
    }
    if !all_separated {
        return Ok(CrtReport {
            separation,
            kernel_ok: false,
            surjective_ok: false,
            depth,
        });
    }

    // kernel: the intersection of the components equals the kernel ideal;
    // verify generators of the computed intersection lie in every component
    // and that products of component generators lie in the intersection
    let comps: Vec<Vec<MPoly>> = primes.iter().map(|p| component(p)).collect();
    // intersect the small presentations; the closed components only serve
    // as membership targets
    let small: Vec<Vec<MPoly>> = primes
        .iter()
        .map(|p| {
            let mut g = p.to_vec();
            g.extend(relations.iter().cloned());
            g
        })
        .collect();
    let mut inter = small[0].clone();
    let mut kernel_ok = true;
    for c in &small[1..] {
        match ideal_intersection(&inter, c, effort) {
            Some(next) => inter = next,
            None => {
                kernel_ok = false;
                break;
            }
        }
    }
    for g in &inter {
        for c in &comps {
            if !ideal_membership(g, c, effort).is_in() {
                kernel_ok = false;
            }
        }
    }
    if primes.len() >= 2 {
        for a in &small[0] {
            for b in &small[1] {
                let prod = a.mul(b);
                if prod.total_degree() > effort {
                    continue;
                }
                if !ideal_membership(&prod, &inter, effort).is_in() {
                    kernel_ok = false;
                }
            }
        }
    }

    // almost-surjectivity: for each component find e with e ≡ 1 mod p_i and
    // e ∈ p_j for j ≠ i
    let mut surjective_ok = true;
    for i in 0..primes.len() {
        if primes.len() == 1 {
            break; // the quotient map itself is onto
        }
        let mut product = one.clone();
        for (j, p) in primes.iter().enumerate() {
            if j != i {
                product = product.mul(&p[0]);
            }
        }
        let mut found = false;
        for lambda in [-1i64, 1, -2, 2, -3, 3] {
            let l = MPoly::constant(Scalar::from_i64(&ring.ground.kind, lambda));
            let shifted = product.sub(&l);
            if ideal_membership(&shifted, &comps[i], effort).is_in() {
                found = true;
                break;
            }
        }
        if !found {
            surjective_ok = false;
        }
    }

    Ok(CrtReport { separation, kernel_ok, surjective_ok, depth })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::etale_localize;

    fn model_curve() -> CurvePresentation {
        let ground = DiffGroundField::rational_functions_shift(1);
        let ring = DiffPolyRing::new(ground, &["y", "x"]);
        let y0 = ring.var_poly(0, 0);
        let y1 = ring.var_poly(0, 1);
        let x0 = ring.var_poly(1, 0);
        let t = MPoly::constant(Scalar::t_var(&ring.ground.kind));
        let f = x0.mul(&x0).sub(&y0.mul(&t));
        etale_localize(ring, 1, vec![y1.sub(&y0)], f, None).unwrap()
    }

    fn flip_line() -> CurvePresentation {
        let ground = DiffGroundField::rational_identity();
        let ring = DiffPolyRing::new(ground, &["y", "x"]);
        let y0 = ring.var_poly(0, 0);
        let x0 = ring.var_poly(1, 0);
        let f = x0.mul(&x0).sub(&y0);
        CurvePresentation {
            sigma: CurveSigma::Level0(vec![y0.clone(), x0.neg()]),
            ring: ring.clone(),
            base_gens: 1,
            alpha: Some(1),
            relations: vec![f],
            base_relation: None,
            inverted: vec![],
        }
    }

    fn base_prime(c: &CurvePresentation, v: i64) -> Vec<MPoly> {
        let y0 = c.ring.var_poly(0, 0);
        vec![y0.sub(&MPoly::constant(Scalar::from_i64(&c.ring.ground.kind, v)))]
    }

    #[test]
    fn multiplicity_matches_on_model_curve() {
        let m = SigmaFiniteMorphism::new(model_curve());
        for v in [1i64, 2, 3] {
            let r = verify_multiplicity(&m, &base_prime(&m.source, v), 4, 3, 24).unwrap();
            assert_eq!(r.verdict, MultiplicityVerdict::Match, "at y - {}", v);
            assert_eq!((r.lhs, r.rhs), (2, 2));
            assert!(!r.outside_hypotheses);
        }
    }

    #[test]
    fn empty_fiber_reported() {
        let m = SigmaFiniteMorphism::new(flip_line());
        let r = verify_multiplicity(&m, &base_prime(&m.source, 1), 3, 3, 24).unwrap();
        assert_eq!(r.verdict, MultiplicityVerdict::EmptyFiber);
        assert_eq!(r.lhs, 0);
    }

    #[test]
    fn sigma_covering_matches() {
        let c = flip_line();
        let x0 = c.ring.var_poly(1, 0);
        let y0 = c.ring.var_poly(0, 0);
        let id = vec![y0.clone(), x0.clone()];
        let tau = vec![y0.clone(), x0.neg()];
        let m = SigmaFiniteMorphism::with_lifts(c, vec![id, tau]);
        let r = verify_multiplicity(&m, &base_prime(&m.source, 4), 3, 3, 24).unwrap();
        assert_eq!(r.verdict, MultiplicityVerdict::Match);
        assert_eq!((r.lhs, r.rhs), (2, 2));
        assert_eq!(r.breakdown.len(), 2);
        for (_, e, dl, stab) in &r.breakdown {
            assert_eq!((*e, *dl, *stab), (1, 1, 1));
        }
    }

    #[test]
    fn ramified_degenerate_point() {
        let c = flip_line();
        let y0 = c.ring.var_poly(0, 0);
        let m = SigmaFiniteMorphism::new(c);
        let fb = fiber(&m, &[y0], 3, 24).unwrap();
        assert_eq!(fb.points.len(), 1);
        assert_eq!(fb.points[0].e, 2);
    }

    #[test]
    fn pullback_is_linear() {
        let m = SigmaFiniteMorphism::new(model_curve());
        let p2 = base_prime(&m.source, 2);
        let d1 = pullback(&m, &[(p2.clone(), 1)], 4, 24).unwrap();
        let d2 = pullback(&m, &[(p2.clone(), 2)], 4, 24).unwrap();
        assert_eq!(
            d1.entries.values().map(|(_, n)| 2 * n).collect::<Vec<_>>(),
            d2.entries.values().map(|(_, n)| *n).collect::<Vec<_>>()
        );
        let zero = pullback(&m, &[(p2, 0)], 4, 24).unwrap();
        assert!(zero.is_zero());
    }

    #[test]
    fn free_ranks() {
        let m = SigmaFiniteMorphism::new(model_curve());
        let ranks = sigma_free_rank(&m, 4, 3).unwrap();
        assert!(ranks.iter().all(|&r| r == 2));
        let flip = SigmaFiniteMorphism::new(flip_line());
        let ranks = sigma_free_rank(&flip, 4, 3).unwrap();
        assert!(ranks.iter().all(|&r| r == 1));
    }

    #[test]
    fn crt_on_frobenius_quotient() {
        let ground = DiffGroundField::rational_identity();
        let ring = DiffPolyRing::new(ground, &["x"]);
        let x0 = ring.var_poly(0, 0);
        let x1 = ring.var_poly(0, 1);
        let one = MPoly::one(&ring.ground.kind);
        let rel = x1.sub(&x0.mul(&x0)); // σx = x²
        let p1 = vec![x0.clone()];
        let p2 = vec![x0.sub(&one)];
        let r = crt_check(&ring, &[rel.clone()], &[p1.clone(), p2], 3, 24).unwrap();
        assert_eq!(r.separation[0].1, SeparationVerdict::Separated);
        assert!(r.kernel_ok);
        assert!(r.surjective_ok);
        // single component: trivially onto
        let r1 = crt_check(&ring, &[rel.clone()], &[p1.clone()], 3, 24).unwrap();
        assert!(r1.surjective_ok && r1.kernel_ok);
        // identical components are not separated
        let r2 = crt_check(&ring, &[rel], &[p1.clone(), p1], 3, 24).unwrap();
        assert_ne!(r2.separation[0].1, SeparationVerdict::Separated);
    }
}
