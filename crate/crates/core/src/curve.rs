//! Prolongation-tower presentations of difference curves: closed points as
//! compatible prime chains, step ramification, and exact valuations computed
//! through norms down to the base coordinate ring.

use crate::diffring::{is_fixed_prime, DiffPolyRing, FixedPrime, SigmaIdeal};
use crate::error::{KernelError, Result};
use crate::ideal::{ideal_membership, Membership};
use crate::multipoly::{MPoly, TermOrder, Var};
use crate::scalar::Scalar;
use crate::tower::{certify_irreducible, Certification, FieldTower};

/// How σ acts on the coordinate ring: by shifting generator indices (the
/// étale tower normal form), or by explicit level-0 images (tower-length-0
/// presentations such as an affine line with σ(x) = -x).
#[derive(Clone, Debug)]
pub enum CurveSigma {
    Prolongation,
    Level0(Vec<MPoly>),
}

#[derive(Clone, Debug)]
pub struct CurvePresentation {
    pub ring: DiffPolyRing,
    /// the first `base_gens` generators are the base-curve coordinates
    pub base_gens: usize,
    /// index of the primitive element generator, when the tower is nontrivial
    pub alpha: Option<usize>,
    /// base σ-rules and the level-0 minimal polynomial of the primitive element
    pub relations: Vec<MPoly>,
    /// optional relation among the base coordinates (plane-curve base)
    pub base_relation: Option<MPoly>,
    /// inverted elements (the étale localization, f' included)
    pub inverted: Vec<MPoly>,
    pub sigma: CurveSigma,
}

impl CurvePresentation {
    /// The minimal polynomial of σ^i(α) with base coordinates replaced by
    /// their residues at a fixed base prime (or left symbolic when
    /// `residues` is None).
    pub fn level_minpoly(&self, f: &MPoly, i: u32, residues: Option<&[Scalar]>) -> MPoly {
        let mut m = self.ring.sigma_apply(f, i);
        if let Some(res) = residues {
            for j in 0..self.base_gens {
                for k in 0..=i {
                    let v = self.ring.var(j, k);
                    m = m.substitute(&v, &MPoly::constant(res[j].clone()));
                }
            }
        } else {
            // collapse base shifts via the base rule y@k = y@0
            for j in 0..self.base_gens {
                for k in 1..=i {
                    let v = self.ring.var(j, k);
                    let v0 = self.ring.var_poly(j, 0);
                    m = m.substitute(&v, &v0);
                }
            }
        }
        m
    }

    /// The level-0 defining polynomial of the primitive element.
    pub fn minpoly(&self) -> Option<&MPoly> {
        let a = self.alpha?;
        self.relations.iter().find(|r| {
            r.vars
                .iter()
                .max_by_key(|v| (v.key.1, v.key.0))
                .map(|v| v.key == (a as u32, 0))
                .unwrap_or(false)
        })
    }

    /// Apply the curve's σ once to a polynomial in the coordinate ring.
    pub fn sigma_apply(&self, g: &MPoly) -> MPoly {
        match &self.sigma {
            CurveSigma::Prolongation => self.ring.sigma_apply(g, 1),
            CurveSigma::Level0(images) => {
                let shifted = g.map_coeffs(|c| self.ring.ground.apply_sigma(c));
                let mut out = shifted;
                // simultaneous substitution via temporaries
                for j in 0..self.ring.gen_names.len() {
                    let v = self.ring.var(j, 0);
                    let tmp = Var::new(&format!("__s{}", j), 2000 + j as u32, 0);
                    out = out.rename_vars(|w| if *w == v { tmp.clone() } else { w.clone() });
                }
                for j in 0..self.ring.gen_names.len() {
                    let tmp = Var::new(&format!("__s{}", j), 2000 + j as u32, 0);
                    out = out.substitute(&tmp, &images[j]);
                }
                out
            }
        }
    }
}

/// Build an étale tower presentation: f monic and separable in the primitive
/// element over the base; f' joins the inverted set.
pub fn etale_localize(
    ring: DiffPolyRing,
    base_gens: usize,
    base_rules: Vec<MPoly>,
    f: MPoly,
    base_relation: Option<MPoly>,
) -> Result<CurvePresentation> {
    let alpha = base_gens; // primitive element follows the base coordinates
    let avar = ring.var(alpha, 0);
    let d = f.degree_in(&avar);
    if d == 0 {
        return Err(KernelError::Malformed(
            "defining polynomial must involve the primitive element".into(),
        ));
    }
    let coeffs = f.coeffs_in(&avar);
    if coeffs[d as usize].constant_value().map(|c| c.is_one()) != Some(true) {
        return Err(KernelError::Malformed(
            "defining polynomial must be monic in the primitive element".into(),
        ));
    }
    let fp = f.derivative(&avar);
    let disc = f.resultant(&fp, &avar);
    if disc.is_zero() {
        return Err(KernelError::InseparableMinimalPolynomial(
            "gcd(f, f') is not 1 over the base".into(),
        ));
    }
    let mut relations = base_rules;
    relations.push(f);
    Ok(CurvePresentation {
        ring,
        base_gens,
        alpha: Some(alpha),
        relations,
        base_relation,
        inverted: vec![fp],
        sigma: CurveSigma::Prolongation,
    })
}

#[derive(Clone, Debug)]
pub struct ClosedPoint {
    pub base_prime: Vec<MPoly>,
    /// chosen level factors: chain[i] is a polynomial in σ^i(α)
    pub chain: Vec<MPoly>,
    pub residue: FieldTower,
    /// per-level relative degrees of the residue tower for levels >= 1
    pub level_degrees: Vec<u64>,
    pub fixedness: FixedPrime,
    /// level from which the factor choice was forced
    pub stabilized_at: Option<usize>,
    pub warnings: Vec<String>,
}

impl ClosedPoint {
    /// Canonical identity of the point: base prime plus the chosen chain.
    pub fn key(&self) -> String {
        let b: Vec<String> = self.base_prime.iter().map(|p| format!("{}", p)).collect();
        let c: Vec<String> = self.chain.iter().map(|p| format!("{}", p)).collect();
        format!("({})[{}]", b.join(", "), c.join("; "))
    }

    /// Limit degree of the residue tower over the base residue field.
    pub fn residue_dl(&self) -> u64 {
        self.level_degrees.iter().copied().min().unwrap_or(1)
    }
}

/// Residue of a linear prime generator v - c.
fn linear_residue(p: &MPoly, v: &Var) -> Option<Scalar> {
    if p.degree_in(v) != 1 {
        return None;
    }
    let coeffs = p.coeffs_in(v);
    let lead = coeffs[1].constant_value()?;
    let c0 = coeffs[0].constant_value()?;
    Some(c0.neg().div(&lead))
}

fn base_residues(c: &CurvePresentation, p0: &[MPoly]) -> Result<Vec<Scalar>> {
    let mut res = Vec::new();
    for j in 0..c.base_gens {
        let v = c.ring.var(j, 0);
        let found = p0.iter().find_map(|p| {
            if p.vars.len() == 1 && p.vars[0] == v {
                linear_residue(p, &v)
            } else {
                None
            }
        });
        match found {
            Some(s) => res.push(s),
            None => {
                return Err(KernelError::Unsupported(
                    "base prime must be linear in each base coordinate".into(),
                ))
            }
        }
    }
    Ok(res)
}

/// Split a polynomial in a single tower variable into linear factors over the
/// ground scalars where possible: returns the roots when the polynomial
/// splits, or None when no root is found.
fn scalar_roots(m: &MPoly, v: &Var) -> Option<Vec<Scalar>> {
    let d = m.degree_in(v);
    let coeffs: Vec<Scalar> = m
        .coeffs_in(v)
        .iter()
        .map(|c| c.constant_value())
        .collect::<Option<Vec<_>>>()?;
    if d == 1 {
        return Some(vec![coeffs[0].neg().div(&coeffs[1])]);
    }
    if d == 2 {
        let four = Scalar::from_i64(&m.field, 4);
        let two = Scalar::from_i64(&m.field, 2);
        let disc = coeffs[1]
            .mul(&coeffs[1])
            .sub(&four.mul(&coeffs[2]).mul(&coeffs[0]));
        let r = disc.sqrt()?;
        let a2 = two.mul(&coeffs[2]);
        if r.is_zero() {
            return Some(vec![coeffs[1].neg().div(&a2)]);
        }
        return Some(vec![
            coeffs[1].neg().add(&r).div(&a2),
            coeffs[1].neg().sub(&r).div(&a2),
        ]);
    }
    None
}

/// All compatible prime chains over a base prime, to the given depth.
/// Fixedness under the curve's own σ is recorded; no filtering happens here.
pub fn enumerate_chains(
    c: &CurvePresentation,
    p0: &[MPoly],
    depth: u32,
    effort: u64,
) -> Result<Vec<ClosedPoint>> {
    let residues = base_residues(c, p0)?;
    let Some(f) = c.minpoly().cloned() else {
        // bare base curve: the base prime is already the whole point
        let mut pt = ClosedPoint {
            base_prime: p0.to_vec(),
            chain: vec![],
            residue: FieldTower::new(c.ring.ground.kind.clone()),
            level_degrees: vec![1; depth as usize],
            fixedness: FixedPrime::Fixed,
            stabilized_at: Some(0),
            warnings: vec![],
        };
        pt.fixedness = point_fixedness(c, p0, &[], depth, effort);
        return Ok(vec![pt]);
    };

    let levels = match c.sigma {
        CurveSigma::Level0(_) => 1,
        CurveSigma::Prolongation => depth.max(1),
    };

    struct Partial {
        chain: Vec<MPoly>,
        tower: FieldTower,
        /// residue images of linearly-solved levels
        subs: Vec<(Var, MPoly)>,
        level_degrees: Vec<u64>,
        forced_from: Option<usize>,
        warnings: Vec<String>,
    }
    let mut partials = vec![Partial {
        chain: vec![],
        tower: FieldTower::new(c.ring.ground.kind.clone()),
        subs: vec![],
        level_degrees: vec![],
        forced_from: Some(0),
        warnings: vec![],
    }];

    for i in 0..levels {
        let m_raw = c.level_minpoly(&f, i, Some(&residues));
        let mut next: Vec<Partial> = Vec::new();
        for p in partials {
            let v = c.ring.var(c.alpha.unwrap(), i);
            let mut m = m_raw.clone();
            for (w, img) in &p.subs {
                m = m.substitute(w, img);
            }
            m = p.tower.normal_form(&m);
            let d = m.degree_in(&v);
            if let Some(roots) = scalar_roots(&m, &v) {
                let forced = roots.len() == 1;
                for r in roots {
                    let mut q = Partial {
                        chain: p.chain.clone(),
                        tower: p.tower.clone(),
                        subs: p.subs.clone(),
                        level_degrees: p.level_degrees.clone(),
                        forced_from: if forced { p.forced_from } else { Some(i as usize + 1) },
                        warnings: p.warnings.clone(),
                    };
                    let lin = MPoly::var(&m.field, v.clone())
                        .sub(&MPoly::constant(r.clone()));
                    q.chain.push(lin);
                    q.subs.push((v.clone(), MPoly::constant(r)));
                    if i >= 1 {
                        q.level_degrees.push(1);
                    }
                    next.push(q);
                }
            } else {
                let cert = certify_irreducible(&p.tower, &v, &m);
                let mut q = Partial {
                    chain: p.chain,
                    tower: p.tower,
                    subs: p.subs,
                    level_degrees: p.level_degrees,
                    forced_from: p.forced_from,
                    warnings: p.warnings,
                };
                let certified = matches!(cert, Certification::Verified(_));
                if !certified {
                    q.warnings
                        .push(format!("unverified irreducibility at level {}", i));
                }
                q.chain.push(m.clone());
                q.tower.push_algebraic(v, m, certified);
                if i >= 1 {
                    q.level_degrees.push(d as u64);
                }
                next.push(q);
            }
        }
        partials = next;
    }

    let mut out = Vec::new();
    for p in partials {
        let mut level_degrees = p.level_degrees;
        // in prolongation mode the pattern continues; in level-0 mode the
        // residue field is σ-stable, so every later level is degree 1
        if matches!(c.sigma, CurveSigma::Level0(_)) {
            level_degrees = vec![1; depth.max(1) as usize];
        }
        let fixedness = point_fixedness(c, p0, &p.chain, depth, effort);
        out.push(ClosedPoint {
            base_prime: p0.to_vec(),
            chain: p.chain,
            residue: p.tower,
            level_degrees,
            fixedness,
            stabilized_at: p.forced_from,
            warnings: p.warnings,
        });
    }
    out.sort_by_key(|p| p.key());
    Ok(out)
}

/// σ-fixed closed points over a base prime.
pub fn enumerate_points_over(
    c: &CurvePresentation,
    p0: &[MPoly],
    depth: u32,
    effort: u64,
) -> Result<Vec<ClosedPoint>> {
    let all = enumerate_chains(c, p0, depth, effort)?;
    Ok(all
        .into_iter()
        .filter(|p| p.fixedness != FixedPrime::NotFixed)
        .collect())
}

/// σ-fixedness of the prime generated by the base prime and the chain,
/// relative to the curve's defining relations.
pub fn point_fixedness(
    c: &CurvePresentation,
    p0: &[MPoly],
    chain: &[MPoly],
    depth: u32,
    effort: u64,
) -> FixedPrime {
    let mut prime: Vec<MPoly> = p0.to_vec();
    prime.extend(chain.iter().cloned());
    match &c.sigma {
        CurveSigma::Prolongation => {
            let ambient = SigmaIdeal::new(c.ring.clone(), c.relations.clone());
            is_fixed_prime(&prime, &ambient, depth, effort)
        }
        CurveSigma::Level0(_) => {
            let mut full = prime.clone();
            full.extend(c.relations.iter().cloned());
            let mut undecided = false;
            // forward: σ(g) in the prime
            for g in &prime {
                let sg = c.sigma_apply(g);
                match ideal_membership(&sg, &full, effort) {
                    Membership::In { .. } => {}
                    Membership::NotIn { .. } => return FixedPrime::NotFixed,
                    Membership::UndecidedAtBound { .. } => undecided = true,
                }
            }
            // backward: g recoverable from σ-images modulo the relations
            let mut shifted: Vec<MPoly> = prime.iter().map(|g| c.sigma_apply(g)).collect();
            shifted.extend(c.relations.iter().cloned());
            for g in &prime {
                match ideal_membership(g, &shifted, effort) {
                    Membership::In { .. } => {}
                    Membership::NotIn { .. } => return FixedPrime::NotFixed,
                    Membership::UndecidedAtBound { .. } => undecided = true,
                }
            }
            if undecided {
                FixedPrime::UndecidedAtBound
            } else {
                FixedPrime::Fixed
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct LocalValuation {
    pub point: ClosedPoint,
    pub e_steps: Vec<u64>,
    pub uniformizer: MPoly,
}

#[derive(Clone, Debug)]
pub enum NonsingularVerdict {
    DVRCertificate(LocalValuation),
    Singular { witness: String, e_step: u64 },
    Undetermined { reason: String },
}

/// Step ramification indices and the DVR certificate.
pub fn check_nonsingular(
    c: &CurvePresentation,
    x: &ClosedPoint,
    depth: u32,
) -> Result<NonsingularVerdict> {
    // base regularity for plane-curve bases
    if let Some(rel) = &c.base_relation {
        let residues = base_residues(c, &x.base_prime)?;
        let mut all_vanish = true;
        for j in 0..c.base_gens {
            let v = c.ring.var(j, 0);
            let mut d = rel.derivative(&v);
            for (jj, r) in residues.iter().enumerate() {
                let w = c.ring.var(jj, 0);
                d = d.substitute(&w, &MPoly::constant(r.clone()));
            }
            if !d.is_zero() {
                all_vanish = false;
            }
        }
        if all_vanish {
            return Ok(NonsingularVerdict::Singular {
                witness: "base Jacobian vanishes at the point".into(),
                e_step: 1,
            });
        }
    }

    // tower-length-0 presentations are localizations of a polynomial ring
    // in the primitive element: every maximal prime there is regular
    if matches!(c.sigma, CurveSigma::Level0(_)) {
        let uniformizer = x
            .chain
            .first()
            .cloned()
            .unwrap_or_else(|| x.base_prime[0].clone());
        return Ok(NonsingularVerdict::DVRCertificate(LocalValuation {
            point: x.clone(),
            e_steps: vec![1; depth.max(1) as usize],
            uniformizer,
        }));
    }
    let Some(f) = c.minpoly().cloned() else {
        // bare base: a regular local ring of dimension one
        return Ok(NonsingularVerdict::DVRCertificate(LocalValuation {
            point: x.clone(),
            e_steps: vec![1; depth.max(1) as usize],
            uniformizer: x.base_prime[0].clone(),
        }));
    };
    let residues = base_residues(c, &x.base_prime)?;
    let levels = match c.sigma {
        CurveSigma::Level0(_) => 1,
        CurveSigma::Prolongation => depth.max(1),
    };
    let mut e_steps = Vec::new();
    let mut subs: Vec<(Var, MPoly)> = Vec::new();
    let mut tower = FieldTower::new(c.ring.ground.kind.clone());
    for i in 0..levels {
        let v = c.ring.var(c.alpha.unwrap(), i);
        let mut m = c.level_minpoly(&f, i, Some(&residues));
        for (w, img) in &subs {
            m = m.substitute(w, img);
        }
        m = tower.normal_form(&m);
        let d = m.degree_in(&v);
        // separable at the point iff disc(m) is nonzero in the residue tower
        let mp = m.derivative(&v);
        let disc = m.resultant(&mp, &v);
        let ramified = tower.normal_form(&disc).is_zero();
        if ramified {
            e_steps.push(d as u64);
        } else {
            e_steps.push(1);
        }
        // extend the residue data following the chain choice
        if (i as usize) < x.chain.len() {
            let choice = &x.chain[i as usize];
            if choice.degree_in(&v) == 1 && choice.total_degree() <= 1 {
                if let Some(r) = linear_residue(choice, &v) {
                    subs.push((v.clone(), MPoly::constant(r)));
                    continue;
                }
            }
            if !ramified {
                tower.push_algebraic(v.clone(), m, true);
            } else {
                // ramified step: track the reduced residue via the radical
                // (x^d = 0 pins the residue of x to 0 for pure powers)
                let coeffs = m.coeffs_in(&v);
                if coeffs[..d as usize].iter().all(|q| tower.normal_form(q).is_zero()) {
                    subs.push((v.clone(), MPoly::zero(&m.field)));
                } else {
                    return Ok(NonsingularVerdict::Undetermined {
                        reason: format!("ramified step with unresolved residue at level {}", i),
                    });
                }
            }
        }
    }
    if e_steps.iter().all(|&e| e == 1) {
        Ok(NonsingularVerdict::DVRCertificate(LocalValuation {
            point: x.clone(),
            e_steps,
            uniformizer: x.base_prime[0].clone(),
        }))
    } else if e_steps.iter().rev().take(2).all(|&e| e > 1) {
        let e = *e_steps.last().unwrap();
        Ok(NonsingularVerdict::Singular {
            witness: format!("step ramification persists: e_step = {:?}", e_steps),
            e_step: e,
        })
    } else {
        Ok(NonsingularVerdict::Undetermined {
            reason: format!("mixed ramification pattern {:?}", e_steps),
        })
    }
}

/// Norm of g down to the base coordinate ring: eliminate the primitive
/// element's prolongation variables by iterated resultants against the
/// generic level minimal polynomials.
fn norm_to_base(c: &CurvePresentation, g: &MPoly) -> Result<(MPoly, u64)> {
    let Some(f) = c.minpoly().cloned() else {
        return Ok((g.clone(), 1));
    };
    let alpha = c.alpha.unwrap();
    let top = g
        .vars
        .iter()
        .filter(|v| v.key.0 == alpha as u32)
        .map(|v| v.key.1)
        .max();
    let mut h = g.clone();
    // collapse base shifts first
    for j in 0..c.base_gens {
        let shifts: Vec<u32> = h
            .vars
            .iter()
            .filter(|v| v.key.0 == j as u32 && v.key.1 > 0)
            .map(|v| v.key.1)
            .collect();
        for k in shifts {
            let v = c.ring.var(j, k);
            let v0 = c.ring.var_poly(j, 0);
            h = h.substitute(&v, &v0);
        }
    }
    let mut fdeg: u64 = 1;
    let levels = top.map(|t| t + 1).unwrap_or(1);
    for i in (0..levels).rev() {
        let v = c.ring.var(alpha, i);
        let m = c.level_minpoly(&f, i, None);
        let d = m.degree_in(&v);
        fdeg *= d as u64;
        if h.degree_in(&v) > 0 {
            h = m.resultant(&h, &v);
        } else {
            // resultant of m with a constant-in-v polynomial is h^d
            h = h.pow(d);
        }
    }
    Ok((h, fdeg))
}

/// Point-independent norm of g into the base coordinate ring.
pub fn norm_to_base_public(c: &CurvePresentation, g: &MPoly) -> Result<MPoly> {
    Ok(norm_to_base(c, g)?.0)
}

/// Multiplicity of the base prime in a base-ring polynomial.
fn base_multiplicity(p0: &[MPoly], h: &MPoly) -> Result<u64> {
    if h.is_zero() {
        return Err(KernelError::Malformed("zero function".into()));
    }
    let mut v = 0u64;
    let mut cur = h.clone();
    loop {
        let (q, r) = cur.div_mod(p0, TermOrder::GrLex);
        if r.is_zero() {
            // cur = sum q_i * p0_i exactly; peel one factor
            let nonzero: Vec<&MPoly> = q.iter().filter(|x| !x.is_zero()).collect();
            if nonzero.len() == 1 && p0.len() == 1 {
                cur = nonzero[0].clone();
            } else {
                // general position: divide by the first generator that works
                let mut peeled = None;
                for (i, qi) in q.iter().enumerate() {
                    if !qi.is_zero() && cur.sub(&qi.mul(&p0[i])).is_zero() {
                        peeled = Some(qi.clone());
                        break;
                    }
                }
                match peeled {
                    Some(p) => cur = p,
                    None => break,
                }
            }
            v += 1;
        } else {
            break;
        }
    }
    Ok(v)
}

/// Exact valuation of num/den at a non-singular point. The point's chain must
/// be forced (single point over the base prime) so the norm sees only this
/// place.
pub fn valuation(
    c: &CurvePresentation,
    point: &ClosedPoint,
    num: &MPoly,
    den: &MPoly,
) -> Result<i64> {
    if num.is_zero() {
        return Err(KernelError::Malformed("zero function".into()));
    }
    if matches!(c.sigma, CurveSigma::Level0(_)) {
        return Ok(valuation_level0(c, point, num)? - valuation_level0(c, point, den)?);
    }
    if point.stabilized_at != Some(0) {
        return Err(KernelError::Unsupported(
            "valuation requires a forced chain over the base prime".into(),
        ));
    }
    let vn = valuation_one(c, point, num)?;
    let vd = valuation_one(c, point, den)?;
    Ok(vn - vd)
}

fn valuation_one(c: &CurvePresentation, point: &ClosedPoint, g: &MPoly) -> Result<i64> {
    let (norm, fdeg) = norm_to_base(c, g)?;
    if norm.is_zero() {
        return Err(KernelError::Malformed("zero function".into()));
    }
    let m = base_multiplicity(&point.base_prime, &norm)?;
    if m % fdeg != 0 {
        return Err(KernelError::Unsupported(
            "norm multiplicity not divisible by the residue degree".into(),
        ));
    }
    Ok((m / fdeg) as i64)
}

/// Valuation on a tower-length-0 presentation: multiplicity of the chain
/// prime in g after eliminating the base coordinates through the base map.
fn valuation_level0(c: &CurvePresentation, point: &ClosedPoint, g: &MPoly) -> Result<i64> {
    if g.is_zero() {
        return Err(KernelError::Malformed("zero function".into()));
    }
    // replace base coordinates by their expressions in the primitive element
    let mut h = g.clone();
    if let Some(f) = c.minpoly() {
        // f = alpha-relation: base coordinate y appears linearly, solve for it
        for j in 0..c.base_gens {
            let v = c.ring.var(j, 0);
            if f.degree_in(&v) == 1 {
                let coeffs = f.coeffs_in(&v);
                let image = coeffs[0].neg().exact_div(&coeffs[1]);
                h = h.substitute(&v, &image);
            }
        }
    }
    let prime = point
        .chain
        .first()
        .cloned()
        .unwrap_or_else(|| point.base_prime[0].clone());
    let mut v = 0i64;
    let mut cur = h;
    loop {
        if cur.is_zero() {
            return Err(KernelError::Malformed("zero function".into()));
        }
        let (q, r) = cur.div_mod(std::slice::from_ref(&prime), TermOrder::GrLex);
        if r.is_zero() {
            cur = q[0].clone();
            v += 1;
        } else {
            break;
        }
    }
    Ok(v)
}

#[derive(Clone, Debug)]
pub struct SigmaQuotientReport {
    pub v_g: i64,
    pub v_sigma_g: i64,
    pub in_local_ring: bool,
}

/// Verify v(σ(g)) >= v(g) at a non-singular point.
pub fn sigma_quotient_bounded(
    c: &CurvePresentation,
    point: &ClosedPoint,
    num: &MPoly,
    den: &MPoly,
) -> Result<SigmaQuotientReport> {
    let v_g = valuation(c, point, num, den)?;
    let sn = c.sigma_apply(num);
    let sd = c.sigma_apply(den);
    let v_sigma_g = valuation(c, point, &sn, &sd)?;
    Ok(SigmaQuotientReport {
        v_g,
        v_sigma_g,
        in_local_ring: v_sigma_g >= v_g,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ground::DiffGroundField;

    /// the model curve: base Q(t)[y] with σ(t)=t+1, σ(y)=y, and x with
    /// x² = y·t (prolongation: σ^k(x)² = y·(t+k))
    pub fn model_curve() -> CurvePresentation {
        let ground = DiffGroundField::rational_functions_shift(1);
        let ring = DiffPolyRing::new(ground, &["y", "x"]);
        let y0 = ring.var_poly(0, 0);
        let y1 = ring.var_poly(0, 1);
        let x0 = ring.var_poly(1, 0);
        let t = MPoly::constant(Scalar::t_var(&ring.ground.kind));
        let f = x0.mul(&x0).sub(&y0.mul(&t));
        etale_localize(ring, 1, vec![y1.sub(&y0)], f, None).unwrap()
    }

    /// degenerate affine line: x with σ(x) = -x, presented over y = x²
    pub fn flip_line() -> CurvePresentation {
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
    fn etale_localize_rejects_inseparable() {
        let ground = DiffGroundField::rational_identity();
        let ring = DiffPolyRing::new(ground, &["y", "x"]);
        let y1 = ring.var_poly(0, 1);
        let y0 = ring.var_poly(0, 0);
        let x0 = ring.var_poly(1, 0);
        let f = x0.mul(&x0);
        let r = etale_localize(ring, 1, vec![y1.sub(&y0)], f, None);
        assert!(matches!(r, Err(KernelError::InseparableMinimalPolynomial(_))));
    }

    #[test]
    fn forced_chain_over_y_minus_two() {
        let c = model_curve();
        let pts = enumerate_points_over(&c, &base_prime(&c, 2), 4, 24).unwrap();
        assert_eq!(pts.len(), 1);
        let p = &pts[0];
        assert_eq!(p.fixedness, FixedPrime::Fixed);
        assert_eq!(p.stabilized_at, Some(0));
        assert_eq!(p.residue_dl(), 2);
        assert!(p.warnings.is_empty());
    }

    #[test]
    fn nonsingular_at_unramified_point() {
        let c = model_curve();
        let pts = enumerate_points_over(&c, &base_prime(&c, 2), 4, 24).unwrap();
        let v = check_nonsingular(&c, &pts[0], 4).unwrap();
        assert!(matches!(v, NonsingularVerdict::DVRCertificate(_)));
    }

    #[test]
    fn all_zero_chain_is_singular() {
        let c = model_curve();
        let pts = enumerate_chains(&c, &base_prime(&c, 0), 4, 24).unwrap();
        assert_eq!(pts.len(), 1);
        let v = check_nonsingular(&c, &pts[0], 4).unwrap();
        match v {
            NonsingularVerdict::Singular { e_step, .. } => assert_eq!(e_step, 2),
            other => panic!("expected Singular, got {:?}", other),
        }
    }

    #[test]
    fn cuspidal_base_is_singular() {
        // base relation z² = y³ at the origin
        let ground = DiffGroundField::rational_identity();
        let ring = DiffPolyRing::new(ground, &["y", "z", "x"]);
        let y0 = ring.var_poly(0, 0);
        let y1 = ring.var_poly(0, 1);
        let z0 = ring.var_poly(1, 0);
        let z1 = ring.var_poly(1, 1);
        let x0 = ring.var_poly(2, 0);
        let rel = z0.mul(&z0).sub(&y0.pow(3));
        let f = x0.mul(&x0).sub(&y0.add(&MPoly::one(&ring.ground.kind)));
        let c = etale_localize(
            ring,
            2,
            vec![y1.sub(&y0), z1.sub(&z0)],
            f,
            Some(rel),
        )
        .unwrap();
        let p0 = vec![y0, z0];
        let pts = enumerate_chains(&c, &p0, 2, 24).unwrap();
        let v = check_nonsingular(&c, &pts[0], 2).unwrap();
        assert!(matches!(v, NonsingularVerdict::Singular { .. }));
    }

    #[test]
    fn valuation_of_uniformizer_and_units() {
        let c = model_curve();
        let pts = enumerate_points_over(&c, &base_prime(&c, 2), 4, 24).unwrap();
        let p = &pts[0];
        let one = MPoly::one(&c.ring.ground.kind);
        let x0 = c.ring.var_poly(1, 0);
        let u = base_prime(&c, 2)[0].clone();
        assert_eq!(valuation(&c, p, &u, &one).unwrap(), 1);
        assert_eq!(valuation(&c, p, &x0, &one).unwrap(), 0);
        // additivity: v((y-2)^2 * x0) = 2
        let g = u.mul(&u).mul(&x0);
        assert_eq!(valuation(&c, p, &g, &one).unwrap(), 2);
        // v((y-2)/x0) = 1
        assert_eq!(valuation(&c, p, &u, &x0).unwrap(), 1);
        // v at another point is 0
        let pts3 = enumerate_points_over(&c, &base_prime(&c, 3), 4, 24).unwrap();
        assert_eq!(valuation(&c, &pts3[0], &u, &one).unwrap(), 0);
        // value of y-3 at this point
        let u3 = base_prime(&c, 3)[0].clone();
        assert_eq!(valuation(&c, &pts3[0], &u3, &one).unwrap(), 1);
    }

    #[test]
    fn sigma_quotient_lemma_holds() {
        let c = model_curve();
        let pts = enumerate_points_over(&c, &base_prime(&c, 2), 4, 24).unwrap();
        let p = &pts[0];
        let one = MPoly::one(&c.ring.ground.kind);
        let u = base_prime(&c, 2)[0].clone();
        let r = sigma_quotient_bounded(&c, p, &u, &one).unwrap();
        assert_eq!(r.v_g, 1);
        assert!(r.in_local_ring);
        // unit
        let x0 = c.ring.var_poly(1, 0);
        let r = sigma_quotient_bounded(&c, p, &x0, &one).unwrap();
        assert_eq!((r.v_g, r.v_sigma_g), (0, 0));
        // square of the uniformizer
        let r = sigma_quotient_bounded(&c, p, &u.mul(&u), &one).unwrap();
        assert_eq!(r.v_g, 2);
        assert!(r.v_sigma_g >= 2);
    }

    #[test]
    fn flip_line_points_and_ramification() {
        let c = flip_line();
        let x0 = c.ring.var_poly(1, 0);
        // over (y-1): both level factors move under σ
        let pts = enumerate_points_over(&c, &base_prime(&c, 1), 3, 24).unwrap();
        assert!(pts.is_empty());
        // all chains exist, two of them
        let all = enumerate_chains(&c, &base_prime(&c, 1), 3, 24).unwrap();
        assert_eq!(all.len(), 2);
        // over (y): the origin is fixed and v(y) = v(x²) = 2
        let pts0 = enumerate_points_over(&c, &base_prime(&c, 0), 3, 24).unwrap();
        assert_eq!(pts0.len(), 1);
        let one = MPoly::one(&c.ring.ground.kind);
        let y0 = c.ring.var_poly(0, 0);
        assert_eq!(valuation(&c, &pts0[0], &y0, &one).unwrap(), 2);
        assert_eq!(valuation(&c, &pts0[0], &x0, &one).unwrap(), 1);
    }
}
