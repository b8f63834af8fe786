//! Difference field extensions presented as prolongation towers: d_k
//! sequences, limit degree, transcendence profile, σ-degree, composition,
//! and σ-separability.

use crate::diffring::DiffPolyRing;
use crate::error::KernelError;
use crate::ground::DiffGroundField;
use crate::multipoly::{MPoly, Var};
use crate::rig::{Nat, SigmaDegree};
use crate::scalar::{FieldKind, Scalar};
use crate::tower::{certify_irreducible, Certification, FieldTower, UnverifiedIrreducibility};

/// A finitely σ-generated extension of the ground difference field,
/// presented by defining difference relations. Level k of the prolongation
/// adjoins the shift-k variables of every generator.
#[derive(Clone, Debug)]
pub struct ExtensionTower {
    pub ring: DiffPolyRing,
    pub relations: Vec<MPoly>,
}

/// The d_k sequence with its stabilization certificate.
#[derive(Clone, Debug, PartialEq)]
pub struct DegreeSequence {
    /// d_k for k = 1..=depth
    pub d: Vec<Nat>,
    /// (start index k, window length): d_k constant over the window
    pub stabilization: Option<(usize, usize)>,
    pub warnings: Vec<UnverifiedIrreducibility>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Separability {
    Yes,
    No,
    Unsupported,
}

/// The full invariant bundle of a σ-algebraic extension.
#[derive(Clone, Debug)]
pub struct InvariantReport {
    pub dl: Nat,
    pub trdeg: u64,
    pub sigma_trdeg: u64,
    pub dd: SigmaDegree,
    pub dt: u64,
    pub separable: Separability,
    /// effective σ-degree; only when the ground is invertible and the
    /// extension σ-separable
    pub effective_dd: Option<SigmaDegree>,
    pub warnings: Vec<UnverifiedIrreducibility>,
}

/// What defines each generator: the relation with the smallest top shift.
#[derive(Clone, Debug)]
struct DefiningRule {
    base_shift: u32,
    relation: MPoly,
}

impl ExtensionTower {
    pub fn new(ring: DiffPolyRing, relations: Vec<MPoly>) -> ExtensionTower {
        ExtensionTower { ring, relations }
    }

    pub fn trivial(ground: DiffGroundField) -> ExtensionTower {
        ExtensionTower { ring: DiffPolyRing::new(ground, &[]), relations: vec![] }
    }

    /// For each generator, the defining relations keyed by the shift of
    /// their top variable. Empty = free generator.
    fn defining_rules(&self) -> Vec<Vec<DefiningRule>> {
        let n = self.ring.gen_names.len();
        let mut rules: Vec<Vec<DefiningRule>> = vec![Vec::new(); n];
        for r in &self.relations {
            // top variable by (shift, generator)
            let Some(top) = r.vars.iter().max_by_key(|v| (v.key.1, v.key.0)) else {
                continue;
            };
            let gen = top.key.0 as usize;
            let shift = top.key.1;
            rules[gen].push(DefiningRule { base_shift: shift, relation: r.clone() });
        }
        for rs in &mut rules {
            rs.sort_by_key(|d| d.base_shift);
        }
        rules
    }

    /// Minimal polynomial presentation of x_{j,i}, or None if transcendental.
    /// When several relations exist, the one anchored closest below the shift
    /// wins (later rewrite rules can collapse the step degree).
    fn var_minpoly(&self, rules: &[Vec<DefiningRule>], gen: usize, shift: u32) -> Option<MPoly> {
        let rule = rules[gen]
            .iter()
            .filter(|d| d.base_shift <= shift)
            .max_by_key(|d| d.base_shift)?;
        Some(self.ring.sigma_apply(&rule.relation, shift - rule.base_shift))
    }

    /// The transcendental variables among shifts 0..=depth.
    fn transcendental_vars(&self, depth: u32) -> Vec<Var> {
        let rules = self.defining_rules();
        let mut out = Vec::new();
        for j in 0..self.ring.gen_names.len() {
            let first = rules[j].first().map(|r| r.base_shift);
            match first {
                None => {
                    for i in 0..=depth {
                        out.push(self.ring.var(j, i));
                    }
                }
                Some(base) => {
                    for i in 0..base.min(depth + 1) {
                        out.push(self.ring.var(j, i));
                    }
                }
            }
        }
        out
    }

    /// d_k for k = 1..=depth with per-step irreducibility certification.
    pub fn degree_sequence(&self, depth: u32, window: u32) -> Result<DegreeSequence, KernelError> {
        if depth < 2 {
            return Err(KernelError::Malformed("depth must be at least 2".into()));
        }
        let rules = self.defining_rules();
        let trans = self.transcendental_vars(depth);
        let mut warnings = Vec::new();
        let mut d: Vec<Nat> = Vec::new();
        // context of algebraic steps accumulated through the levels
        let mut context: Vec<(Var, MPoly)> = Vec::new();
        // include level-0 algebraic steps in the context
        for j in 0..self.ring.gen_names.len() {
            if let Some(mp) = self.var_minpoly(&rules, j, 0) {
                context.push((self.ring.var(j, 0), mp));
            }
        }
        for k in 1..=depth {
            let mut level = Nat::Fin(1);
            for j in 0..self.ring.gen_names.len() {
                match self.var_minpoly(&rules, j, k) {
                    None => {
                        level = Nat::Inf;
                    }
                    Some(mp) => {
                        let v = self.ring.var(j, k);
                        let deg = mp.degree_in(&v) as u64;
                        if deg > 1 {
                            let ok = self.certify_step(&context, &trans, &v, &mp);
                            if !ok {
                                warnings.push(UnverifiedIrreducibility { var: v.name.clone() });
                            }
                        }
                        level = level.mul(Nat::Fin(deg));
                        context.push((v, mp));
                    }
                }
            }
            d.push(level);
        }
        // monotonicity on finite entries
        for k in 1..d.len() {
            if let (Nat::Fin(a), Nat::Fin(b)) = (d[k - 1], d[k]) {
                if b > a {
                    return Err(KernelError::MonotonicityViolation {
                        step: k,
                        prev: a,
                        cur: b,
                    });
                }
            }
        }
        // stabilization: a constant window of the requested length at the tail
        let w = window as usize;
        let stabilization = (0..d.len()).find_map(|s| {
            if s + w <= d.len() && d[s..s + w].iter().all(|x| *x == d[s]) && d[s..].iter().all(|x| *x == d[s])
            {
                Some((s + 1, w))
            } else {
                None
            }
        });
        Ok(DegreeSequence { d, stabilization, warnings })
    }

    /// Certify irreducibility of one prolongation step over the accumulated
    /// context: linear steps are trivial; quadratic steps get a place-value
    /// or multiquadratic certificate; small joint towers get a full-degree
    /// primitive-element check.
    fn certify_step(
        &self,
        context: &[(Var, MPoly)],
        trans: &[Var],
        var: &Var,
        minpoly: &MPoly,
    ) -> bool {
        if minpoly.degree_in(var) == 1 {
            return true;
        }
        // candidate places: each transcendental variable, and the ground t
        for place in trans.iter().map(Some).chain(std::iter::once(None)) {
            if place.is_none() && !matches!(self.ring.ground.kind, FieldKind::RatFun(_)) {
                continue;
            }
            if place_value_certificate(context, trans, place, var, minpoly) {
                return true;
            }
        }
        // multiquadratic: scalar-coefficient quadratic chain, no
        // transcendentals involved
        if trans.is_empty() {
            let mut tower = FieldTower::new(self.ring.ground.kind.clone());
            let mut shaped = true;
            for (v, mp) in context {
                if mp.degree_in(v) >= 1 && mp.vars.iter().all(|w| w == v) {
                    tower.push_algebraic(v.clone(), mp.clone(), true);
                } else {
                    shaped = false;
                    break;
                }
            }
            if shaped {
                if let Certification::Verified(_) = certify_irreducible(&tower, var, minpoly) {
                    return true;
                }
            }
        }
        false
    }

    pub fn limit_degree(
        &self,
        depth: u32,
        window: u32,
    ) -> Result<(Nat, DegreeSequence), KernelError> {
        let seq = self.degree_sequence(depth, window)?;
        if seq.stabilization.is_none() {
            return Err(KernelError::Unsupported(format!(
                "degree sequence not stabilized at depth {}",
                depth
            )));
        }
        let dl = seq.d.iter().copied().min().unwrap_or(Nat::Fin(1));
        Ok((dl, seq))
    }

    /// (trdeg, sigma_trdeg): transcendence degree at stabilization, and the
    /// eventual per-level increment.
    pub fn transcendence_profile(&self, depth: u32) -> (u64, u64) {
        let rules = self.defining_rules();
        let mut increments: Vec<u64> = Vec::new();
        for k in 0..=depth {
            let mut inc = 0;
            for j in 0..self.ring.gen_names.len() {
                let is_trans = match rules[j].first() {
                    None => true,
                    Some(r) => k < r.base_shift,
                };
                if is_trans {
                    inc += 1;
                }
            }
            increments.push(inc);
        }
        let sigma_trdeg = *increments.last().unwrap();
        // trdeg counted at stabilization of the increments
        let trdeg: u64 = if sigma_trdeg == 0 {
            increments.iter().sum()
        } else {
            increments.iter().sum::<u64>()
        };
        (trdeg, sigma_trdeg)
    }

    /// Full invariant report; requires σ-transcendence degree 0.
    pub fn sigma_degree(&self, depth: u32, window: u32) -> Result<InvariantReport, KernelError> {
        let (trdeg, sigma_trdeg) = self.transcendence_profile(depth);
        if sigma_trdeg > 0 {
            return Err(KernelError::Unsupported(
                "positive sigma-transcendence degree".into(),
            ));
        }
        let (dl, seq) = self.limit_degree(depth, window)?;
        let dd = SigmaDegree::new(dl, trdeg);
        let separable = self.is_sigma_separable();
        let effective_dd = if self.ring.ground.invertible() && separable == Separability::Yes {
            Some(dd)
        } else {
            None
        };
        Ok(InvariantReport {
            dl,
            trdeg,
            sigma_trdeg,
            dd,
            dt: trdeg,
            separable,
            effective_dd,
            warnings: seq.warnings,
        })
    }

    /// Stack `other` on top of this tower. The grounds must agree and the
    /// generator names must be disjoint; `other`'s relations may reference
    /// this tower's generators.
    pub fn compose(&self, other: &ExtensionTower) -> Result<ExtensionTower, KernelError> {
        if self.ring.ground != other.ring.ground {
            return Err(KernelError::BaseMismatch(format!(
                "{} vs {}",
                self.ring.ground.kind, other.ring.ground.kind
            )));
        }
        for n in &other.ring.gen_names {
            if self.ring.gen_names.contains(n) {
                return Err(KernelError::BaseMismatch(format!(
                    "generator {} declared in both towers",
                    n
                )));
            }
        }
        let mut names: Vec<&str> = self.ring.gen_names.iter().map(|s| s.as_str()).collect();
        names.extend(other.ring.gen_names.iter().map(|s| s.as_str()));
        let ring = DiffPolyRing::new(self.ring.ground.clone(), &names);
        // re-key other's variables to the composite generator indexing
        let offset = self.ring.gen_names.len() as u32;
        let mut relations = self.relations.clone();
        for r in &other.relations {
            relations.push(r.rename_vars(|v| {
                // variables of `other`'s own generators shift their gen key;
                // references to `self`'s generators (by name) keep theirs
                let name_base = v.name.rsplit_once('@').map(|(b, _)| b).unwrap_or(&v.name);
                if other.ring.gen_names.iter().any(|g| g == name_base) {
                    Var::new(&v.name, v.key.0 + offset, v.key.1)
                } else {
                    v.clone()
                }
            }));
        }
        Ok(ExtensionTower { ring, relations })
    }

    /// Characteristic 0 is always σ-separable; characteristic p needs the
    /// invertibility flag to decide, otherwise Unsupported.
    pub fn is_sigma_separable(&self) -> Separability {
        if self.ring.ground.kind.characteristic() == 0 {
            return Separability::Yes;
        }
        if self.relations.is_empty() && self.ring.gen_names.is_empty() {
            return Separability::Yes;
        }
        if self.ring.ground.invertible() {
            Separability::Yes
        } else {
            Separability::Unsupported
        }
    }
}

/// Sum of component σ-degrees in the rig (leading term absorbs).
pub fn component_degree_sum(components: &[SigmaDegree]) -> SigmaDegree {
    components
        .iter()
        .fold(SigmaDegree::zero(), |acc, c| acc.add(c))
}

/// Place-value certificate for a quadratic step x^2 = rhs: compute the
/// place-adic value of rhs (place = a transcendental variable, or the
/// ground variable t when `place` is None); the step is irreducible when
/// the halved value leaves the accumulated value group.
fn place_value_certificate(
    context: &[(Var, MPoly)],
    trans: &[Var],
    place: Option<&Var>,
    var: &Var,
    minpoly: &MPoly,
) -> bool {
    // values as dyadic rationals (num, 2^k)
    let mut values: Vec<(Var, (i64, u32))> = Vec::new();
    for (v, mp) in context {
        let Some(val) = quad_step_value(&values, trans, place, v, mp) else {
            return false;
        };
        values.push((v.clone(), val));
    }
    let Some((num, k)) = quad_step_value(&values, trans, place, var, minpoly) else {
        return false;
    };
    let (rn, rk) = reduce_dyadic(num, k);
    let max_prev = values
        .iter()
        .map(|(_, (n, kk))| reduce_dyadic(*n, *kk).1)
        .max()
        .unwrap_or(0);
    rk > max_prev && rn % 2 != 0
}

fn reduce_dyadic(mut num: i64, mut k: u32) -> (i64, u32) {
    while k > 0 && num % 2 == 0 {
        num /= 2;
        k -= 1;
    }
    (num, k)
}

/// Value of the generator defined by a monic step in `var`: handles
/// degree-1 steps (value of the defining expression) and degree-2 pure
/// steps var^2 = rhs, where rhs has a unique minimal-value term.
fn quad_step_value(
    values: &[(Var, (i64, u32))],
    trans: &[Var],
    place: Option<&Var>,
    var: &Var,
    minpoly: &MPoly,
) -> Option<(i64, u32)> {
    let d = minpoly.degree_in(var);
    let coeffs = minpoly.coeffs_in(var);
    if d == 1 {
        let rhs = coeffs[0].neg();
        return poly_value(values, trans, place, &rhs);
    }
    if d != 2 || !coeffs[1].is_zero() {
        return None;
    }
    let rhs = coeffs[0].neg();
    let (n, k) = poly_value(values, trans, place, &rhs)?;
    Some((n, k + 1))
}

/// place-adic value of a polynomial in the tower variables: minimum over
/// terms, required unique.
fn poly_value(
    values: &[(Var, (i64, u32))],
    trans: &[Var],
    place: Option<&Var>,
    p: &MPoly,
) -> Option<(i64, u32)> {
    if p.is_zero() {
        return None;
    }
    let mut best: Option<(i64, u32)> = None;
    let mut tie = false;
    for (e, c) in &p.terms {
        let mut num: i64 = scalar_place_value(c, place)?;
        let mut k: u32 = 0;
        for (i, &exp) in e.iter().enumerate() {
            if exp == 0 {
                continue;
            }
            let v = &p.vars[i];
            let (vn, vk) = if Some(v) == place {
                (1, 0)
            } else if trans.contains(v) {
                (0, 0)
            } else if let Some((_, val)) = values.iter().find(|(w, _)| w == v) {
                *val
            } else {
                return None;
            };
            while k < vk {
                num *= 2;
                k += 1;
            }
            num += (exp as i64) * (vn << (k - vk));
        }
        match &best {
            None => best = Some((num, k)),
            Some((bn, bk)) => {
                // compare num/2^k vs bn/2^bk
                let kk = (*bk).max(k);
                let a = num << (kk - k);
                let b = bn << (kk - bk);
                if a < b {
                    best = Some((num, k));
                    tie = false;
                } else if a == b {
                    tie = true;
                }
            }
        }
    }
    if tie {
        None
    } else {
        best
    }
}

/// Value of a scalar coefficient at the place: 0 for place = transcendental
/// variable; t-adic value for place = ground t.
fn scalar_place_value(c: &Scalar, place: Option<&Var>) -> Option<i64> {
    if c.is_zero() {
        return None;
    }
    match place {
        Some(_) => Some(0),
        None => match c {
            Scalar::RatFun(r) => {
                let vn = r.num.coeffs.iter().position(|x| !x.is_zero())? as i64;
                let vd = r.den.coeffs.iter().position(|x| !x.is_zero())? as i64;
                Some(vn - vd)
            }
            _ => Some(0),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ground_q() -> DiffGroundField {
        DiffGroundField::rational_identity()
    }

    fn ground_qt_shift() -> DiffGroundField {
        DiffGroundField::rational_functions_shift(1)
    }

    /// (σx)² = x over Q
    fn benign_sqrt_tower() -> ExtensionTower {
        let ring = DiffPolyRing::new(ground_q(), &["x"]);
        let x0 = ring.var_poly(0, 0);
        let x1 = ring.var_poly(0, 1);
        let rel = x1.mul(&x1).sub(&x0);
        ExtensionTower::new(ring, vec![rel])
    }

    /// σx = x² over Q
    fn frobenius_like_tower() -> ExtensionTower {
        let ring = DiffPolyRing::new(ground_q(), &["x"]);
        let x0 = ring.var_poly(0, 0);
        let x1 = ring.var_poly(0, 1);
        let rel = x1.sub(&x0.mul(&x0));
        ExtensionTower::new(ring, vec![rel])
    }

    /// σ²x = x over Q
    fn periodic_tower() -> ExtensionTower {
        let ring = DiffPolyRing::new(ground_q(), &["x"]);
        let x0 = ring.var_poly(0, 0);
        let x2 = ring.var_poly(0, 2);
        let rel = x2.sub(&x0);
        ExtensionTower::new(ring, vec![rel])
    }

    /// x² = t over (Q(t), t -> t+1): multiquadratic chain x@k² = t+k
    fn sqrt_t_tower() -> ExtensionTower {
        let ring = DiffPolyRing::new(ground_qt_shift(), &["x"]);
        let x0 = ring.var_poly(0, 0);
        let t = MPoly::constant(Scalar::t_var(&ring.ground.kind));
        let rel = x0.mul(&x0).sub(&t);
        ExtensionTower::new(ring, vec![rel])
    }

    #[test]
    fn degree_sequences_of_the_three_model_towers() {
        let seq = benign_sqrt_tower().degree_sequence(6, 3).unwrap();
        assert_eq!(seq.d, vec![Nat::Fin(2); 6]);
        assert!(seq.warnings.is_empty(), "{:?}", seq.warnings);
        assert!(seq.stabilization.is_some());

        let seq = frobenius_like_tower().degree_sequence(6, 3).unwrap();
        assert_eq!(seq.d, vec![Nat::Fin(1); 6]);

        let seq = periodic_tower().degree_sequence(6, 3).unwrap();
        assert_eq!(seq.d[0], Nat::Inf);
        assert!(seq.d[1..].iter().all(|x| *x == Nat::Fin(1)));
    }

    #[test]
    fn limit_degrees() {
        assert_eq!(benign_sqrt_tower().limit_degree(6, 3).unwrap().0, Nat::Fin(2));
        assert_eq!(frobenius_like_tower().limit_degree(6, 3).unwrap().0, Nat::Fin(1));
        assert_eq!(periodic_tower().limit_degree(6, 3).unwrap().0, Nat::Fin(1));
    }

    #[test]
    fn transcendence_profiles() {
        assert_eq!(benign_sqrt_tower().transcendence_profile(6), (1, 0));
        assert_eq!(frobenius_like_tower().transcendence_profile(6), (1, 0));
        assert_eq!(periodic_tower().transcendence_profile(6), (2, 0));
        // free variable
        let ring = DiffPolyRing::new(ground_q(), &["x"]);
        let free = ExtensionTower::new(ring, vec![]);
        assert_eq!(free.transcendence_profile(6).1, 1);
    }

    #[test]
    fn sigma_degrees() {
        let r = benign_sqrt_tower().sigma_degree(6, 3).unwrap();
        assert_eq!(r.dd, SigmaDegree::new(Nat::Fin(2), 1));
        let r = frobenius_like_tower().sigma_degree(6, 3).unwrap();
        assert_eq!(r.dd, SigmaDegree::new(Nat::Fin(1), 1));
        let r = periodic_tower().sigma_degree(6, 3).unwrap();
        assert_eq!(r.dd, SigmaDegree::new(Nat::Fin(1), 2));
        assert_eq!(r.dt, 2);
        assert_eq!(r.separable, Separability::Yes);
    }

    #[test]
    fn sqrt_t_tower_has_dl_two() {
        let seq = sqrt_t_tower().degree_sequence(6, 3).unwrap();
        assert_eq!(seq.d, vec![Nat::Fin(2); 6]);
        assert!(seq.warnings.is_empty(), "{:?}", seq.warnings);
        let r = sqrt_t_tower().sigma_degree(6, 3).unwrap();
        assert_eq!(r.dd, SigmaDegree::new(Nat::Fin(2), 0));
    }

    #[test]
    fn composite_of_two_benign_sqrt_towers() {
        // (σx)²=x joined with (σy)²=y: d_k = 4, dd = 4L²
        let e1 = benign_sqrt_tower();
        let ring = DiffPolyRing::new(ground_q(), &["y"]);
        let y0 = ring.var_poly(0, 0);
        let y1 = ring.var_poly(0, 1);
        let e2 = ExtensionTower::new(ring, vec![y1.mul(&y1).sub(&y0)]);
        let comp = e1.compose(&e2).unwrap();
        let seq = comp.degree_sequence(5, 3).unwrap();
        assert_eq!(seq.d, vec![Nat::Fin(4); 5]);
        assert!(seq.warnings.is_empty(), "{:?}", seq.warnings);
        let r = comp.sigma_degree(5, 3).unwrap();
        let prod = e1
            .sigma_degree(5, 3)
            .unwrap()
            .dd
            .mul(&e2.sigma_degree(5, 3).unwrap().dd);
        assert_eq!(r.dd, prod);
        assert_eq!(r.dd, SigmaDegree::new(Nat::Fin(4), 2));
    }

    #[test]
    fn composite_of_multiquadratic_towers_over_qt() {
        // x² = t with y² = t + 1/2: joint d_k = 4
        let e1 = sqrt_t_tower();
        let ring = DiffPolyRing::new(ground_qt_shift(), &["y"]);
        let y0 = ring.var_poly(0, 0);
        let k = ring.ground.kind.clone();
        let half = Scalar::from_rational(&k, 1, 2);
        let rel = y0
            .mul(&y0)
            .sub(&MPoly::constant(Scalar::t_var(&k).add(&half)));
        let e2 = ExtensionTower::new(ring, vec![rel]);
        let comp = e1.compose(&e2).unwrap();
        let seq = comp.degree_sequence(5, 3).unwrap();
        assert_eq!(seq.d, vec![Nat::Fin(4); 5]);
        assert!(seq.warnings.is_empty(), "{:?}", seq.warnings);
        let r = comp.sigma_degree(5, 3).unwrap();
        let prod = e1
            .sigma_degree(5, 3)
            .unwrap()
            .dd
            .mul(&e2.sigma_degree(5, 3).unwrap().dd);
        assert_eq!(r.dd, prod);
    }

    #[test]
    fn composite_with_trivial_tower() {
        let e = benign_sqrt_tower();
        let trivial = ExtensionTower::trivial(ground_q());
        let c1 = e.compose(&trivial).unwrap();
        let c2 = trivial.compose(&e).unwrap();
        let dd = e.sigma_degree(6, 3).unwrap().dd;
        assert_eq!(c1.sigma_degree(6, 3).unwrap().dd, dd);
        assert_eq!(c2.sigma_degree(6, 3).unwrap().dd, dd);
    }

    #[test]
    fn base_mismatch_refused() {
        let e1 = benign_sqrt_tower();
        let ring = DiffPolyRing::new(ground_qt_shift(), &["y"]);
        let e2 = ExtensionTower::new(ring, vec![]);
        assert!(matches!(e1.compose(&e2), Err(KernelError::BaseMismatch(_))));
    }

    #[test]
    fn component_sums() {
        let l = SigmaDegree::l_power(1);
        assert_eq!(component_degree_sum(&[l, l]), SigmaDegree::new(Nat::Fin(2), 1));
        let two_l = SigmaDegree::new(Nat::Fin(2), 1);
        let three = SigmaDegree::finite(3);
        assert_eq!(component_degree_sum(&[two_l, three]), two_l);
        assert_eq!(component_degree_sum(&[]), SigmaDegree::zero());
    }

    #[test]
    fn mixed_transcendental_and_algebraic_generators() {
        // x defined from level 3 by a cubic, z from level 2 by a quadratic:
        // d = [∞, ∞, 6, 6, 6, 6] — non-increasing on finite entries
        let ring = DiffPolyRing::new(ground_q(), &["x", "z"]);
        let x0 = ring.var_poly(0, 0);
        let x3 = ring.var_poly(0, 3);
        let z0 = ring.var_poly(1, 0);
        let z2 = ring.var_poly(1, 2);
        let rel_x = x3.pow(3).sub(&x0);
        let rel_z = z2.mul(&z2).sub(&z0);
        let t = ExtensionTower::new(ring, vec![rel_x, rel_z]);
        let seq = t.degree_sequence(6, 3).unwrap();
        assert_eq!(seq.d[0], Nat::Inf);
        assert_eq!(seq.d[1], Nat::Inf);
        assert_eq!(seq.d[2], Nat::Fin(6));
        assert_eq!(seq.d[5], Nat::Fin(6));
    }
}
