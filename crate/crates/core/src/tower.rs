//! Towers of simple field extensions presented by triangular monic minimal
//! polynomials, with exact arithmetic in the top field via normal forms on
//! the power basis, plus an irreducibility-certificate toolbox.

use crate::linalg::Matrix;
use crate::multipoly::{MPoly, Var};
use crate::scalar::{FieldKind, Scalar};

/// One step of a field tower: a new generator with its monic minimal
/// polynomial over the fields below, or a transcendental generator.
#[derive(Clone, Debug)]
pub enum TowerStep {
    /// New algebraic generator `var` with monic minimal polynomial `minpoly`
    /// in `var` whose coefficients live in the subtower below. `certified`
    /// records whether irreducibility was verified or merely asserted.
    Algebraic { var: Var, minpoly: MPoly, certified: bool },
    /// Transcendental generator.
    Transcendental { var: Var },
}

impl TowerStep {
    pub fn var(&self) -> &Var {
        match self {
            TowerStep::Algebraic { var, .. } => var,
            TowerStep::Transcendental { var } => var,
        }
    }
}

/// Outcome of the irreducibility toolbox on one step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certification {
    Verified(&'static str),
    Unverified,
}

/// Warning attached when a step's irreducibility is asserted, not checked.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnverifiedIrreducibility {
    pub var: String,
}

/// A tower k ⊂ k(a_1) ⊂ k(a_1, a_2) ⊂ …, each algebraic step monic in its
/// generator with coefficients reduced modulo the steps below.
#[derive(Clone, Debug)]
pub struct FieldTower {
    pub base: FieldKind,
    pub steps: Vec<TowerStep>,
}

impl FieldTower {
    pub fn new(base: FieldKind) -> FieldTower {
        FieldTower { base, steps: vec![] }
    }

    pub fn push_algebraic(&mut self, var: Var, minpoly: MPoly, certified: bool) {
        assert!(minpoly.degree_in(&var) >= 1, "minimal polynomial must involve its generator");
        self.steps.push(TowerStep::Algebraic { var, minpoly, certified });
    }

    pub fn push_transcendental(&mut self, var: Var) {
        self.steps.push(TowerStep::Transcendental { var });
    }

    pub fn has_transcendental(&self) -> bool {
        self.steps.iter().any(|s| matches!(s, TowerStep::Transcendental { .. }))
    }

    /// Per-step degrees of the algebraic steps, in order.
    pub fn step_degrees(&self) -> Vec<u64> {
        self.steps
            .iter()
            .filter_map(|s| match s {
                TowerStep::Algebraic { var, minpoly, .. } => {
                    Some(minpoly.degree_in(var) as u64)
                }
                TowerStep::Transcendental { .. } => None,
            })
            .collect()
    }

    /// Total degree of the tower: product of step degrees, or None when a
    /// transcendental step makes it infinite. Also reports uncertified steps.
    pub fn degree(&self) -> (Option<u64>, Vec<UnverifiedIrreducibility>) {
        let mut warnings = Vec::new();
        for s in &self.steps {
            if let TowerStep::Algebraic { var, certified: false, .. } = s {
                warnings.push(UnverifiedIrreducibility { var: var.name.clone() });
            }
        }
        if self.has_transcendental() {
            return (None, warnings);
        }
        (Some(self.step_degrees().iter().product()), warnings)
    }

    /// Reduce a polynomial in the tower generators to normal form: degree in
    /// each algebraic generator below that generator's step degree.
    pub fn normal_form(&self, p: &MPoly) -> MPoly {
        let mut out = p.clone();
        // reduce from the top generator down
        for s in self.steps.iter().rev() {
            if let TowerStep::Algebraic { var, minpoly, .. } = s {
                out = reduce_by_monic(&out, var, minpoly);
            }
        }
        out
    }

    /// Power-basis monomials of the (finite) tower, as exponent assignments
    /// over the algebraic generators in step order.
    fn basis_exponents(&self) -> Vec<Vec<u32>> {
        let degs: Vec<u32> = self
            .steps
            .iter()
            .filter_map(|s| match s {
                TowerStep::Algebraic { var, minpoly, .. } => Some(minpoly.degree_in(var)),
                _ => None,
            })
            .collect();
        let mut basis = vec![vec![]];
        for d in degs {
            let mut next = Vec::with_capacity(basis.len() * d as usize);
            for b in &basis {
                for e in 0..d {
                    let mut v = b.clone();
                    v.push(e);
                    next.push(v);
                }
            }
            basis = next;
        }
        basis
    }

    fn algebraic_vars(&self) -> Vec<Var> {
        self.steps
            .iter()
            .filter_map(|s| match s {
                TowerStep::Algebraic { var, .. } => Some(var.clone()),
                _ => None,
            })
            .collect()
    }

    /// Coordinates of a normal-form element on the power basis; entries are
    /// base-field scalars. Fails if the element involves a transcendental
    /// generator or a non-constant residue.
    pub fn coordinates(&self, p: &MPoly) -> Option<Vec<Scalar>> {
        let nf = self.normal_form(p);
        let gens = self.algebraic_vars();
        let basis = self.basis_exponents();
        let mut coords = vec![Scalar::zero(&self.base); basis.len()];
        for (e, c) in &nf.terms {
            // exponent of each generator in this term
            let mut key = vec![0u32; gens.len()];
            for (i, v) in nf.vars.iter().enumerate() {
                if e[i] == 0 {
                    continue;
                }
                match gens.iter().position(|g| g == v) {
                    Some(gi) => key[gi] = e[i],
                    None => return None, // foreign variable
                }
            }
            let pos = basis.iter().position(|b| *b == key)?;
            coords[pos] = coords[pos].add(c);
        }
        Some(coords)
    }

    /// Dimension of the tower as a vector space over the base.
    pub fn dim(&self) -> u64 {
        self.step_degrees().iter().product()
    }

    /// Multiplication-by-`p` matrix on the power basis.
    pub fn mult_matrix(&self, p: &MPoly) -> Option<Matrix> {
        let basis = self.basis_exponents();
        let gens = self.algebraic_vars();
        let n = basis.len();
        let mut m = Matrix::zero(&self.base, n, n);
        for (j, be) in basis.iter().enumerate() {
            let mut mono = MPoly::one(&self.base);
            for (g, &e) in gens.iter().zip(be) {
                mono = mono.mul(&MPoly::var(&self.base, g.clone()).pow(e));
            }
            let col = self.coordinates(&p.mul(&mono))?;
            for i in 0..n {
                *m.at_mut(i, j) = col[i].clone();
            }
        }
        Some(m)
    }

    /// Invert a nonzero element: solve (mult-by-p) x = 1 on the power basis.
    pub fn invert(&self, p: &MPoly) -> Option<MPoly> {
        let m = self.mult_matrix(p)?;
        let n = self.basis_exponents().len();
        let mut one = vec![Scalar::zero(&self.base); n];
        one[0] = Scalar::one(&self.base);
        let x = m.solve(&one)?;
        Some(self.from_coordinates(&x))
    }

    fn from_coordinates(&self, coords: &[Scalar]) -> MPoly {
        let basis = self.basis_exponents();
        let gens = self.algebraic_vars();
        let mut acc = MPoly::zero(&self.base);
        for (c, be) in coords.iter().zip(&basis) {
            if c.is_zero() {
                continue;
            }
            let mut mono = MPoly::constant(c.clone());
            for (g, &e) in gens.iter().zip(be) {
                mono = mono.mul(&MPoly::var(&self.base, g.clone()).pow(e));
            }
            acc = acc.add(&mono);
        }
        acc
    }

    /// Minimal polynomial of `elem` over the base, as coefficients of a
    /// monic polynomial (ascending, constant first, leading 1 omitted is NOT
    /// done: full vector of length deg+1 ending in 1).
    pub fn minpoly_over_base(&self, elem: &MPoly) -> Option<Vec<Scalar>> {
        let n = self.dim() as usize;
        // powers 1, e, e^2, ... until linear dependence
        let mut pows: Vec<Vec<Scalar>> = Vec::new();
        let mut cur = MPoly::one(&self.base);
        for k in 0..=n {
            pows.push(self.coordinates(&cur)?);
            // rows = powers; find dependence
            let m = Matrix::from_rows(&self.base, pows.clone());
            if m.rank() < pows.len() {
                // solve c_0*1 + ... + c_{k-1} e^{k-1} = -e^k exactly at first drop
                let mt = transpose(&m);
                // last power is dependent on the earlier ones
                let cols = pows.len() - 1;
                let mut sub = Matrix::zero(&self.base, mt.rows, cols);
                let mut rhs = vec![Scalar::zero(&self.base); mt.rows];
                for r in 0..mt.rows {
                    for c in 0..cols {
                        *sub.at_mut(r, c) = mt.at(r, c).clone();
                    }
                    rhs[r] = mt.at(r, cols).neg();
                }
                let sol = sub.solve(&rhs)?;
                let mut out = sol;
                out.push(Scalar::one(&self.base));
                return Some(out);
            }
            cur = self.normal_form(&cur.mul(elem));
            let _ = k;
        }
        None
    }

    /// Degree of `elem` over the base field.
    pub fn element_degree(&self, elem: &MPoly) -> Option<u64> {
        self.minpoly_over_base(elem).map(|mp| (mp.len() - 1) as u64)
    }
}

fn transpose(m: &Matrix) -> Matrix {
    let mut t = Matrix::zero(&m.field, m.cols, m.rows);
    for i in 0..m.rows {
        for j in 0..m.cols {
            *t.at_mut(j, i) = m.at(i, j).clone();
        }
    }
    t
}

/// Reduce `p` modulo a monic polynomial in `var` (leading coefficient must
/// be a unit constant once fully reduced below; here we require it to be a
/// base-field scalar).
fn reduce_by_monic(p: &MPoly, var: &Var, minpoly: &MPoly) -> MPoly {
    let d = minpoly.degree_in(var);
    let coeffs = minpoly.coeffs_in(var);
    let lead = coeffs
        .last()
        .and_then(|c| c.constant_value())
        .expect("minimal polynomial must have constant leading coefficient");
    // rewrite rule: var^d = -(lower terms)/lead
    let mut rest = MPoly::zero(&p.field);
    for (e, c) in coeffs.iter().take(d as usize).enumerate() {
        let vp = MPoly::var(&p.field, var.clone()).pow(e as u32);
        rest = rest.add(&c.mul(&vp));
    }
    let replacement = rest.neg().scale(&lead.inv());
    let mut out = p.clone();
    while out.degree_in(var) >= d {
        let maxd = out.degree_in(var);
        let coeffs_out = out.coeffs_in(var);
        let top = &coeffs_out[maxd as usize];
        let vp_low = MPoly::var(&p.field, var.clone()).pow(maxd - d);
        let subtract = top.mul(&MPoly::var(&p.field, var.clone()).pow(maxd));
        let add_back = top.mul(&vp_low).mul(&replacement);
        out = out.sub(&subtract).add(&add_back);
    }
    out
}

/// Certify irreducibility of a monic step polynomial over the subtower
/// `below`, using a toolbox of sound sufficient criteria. Returns a
/// certificate name on success.
pub fn certify_irreducible(below: &FieldTower, var: &Var, minpoly: &MPoly) -> Certification {
    let d = minpoly.degree_in(var);
    if d == 1 {
        return Certification::Verified("linear");
    }
    // quadratic: irreducible iff the discriminant-style square test fails,
    // i.e. x^2 + bx + c has no root. Root exists iff b^2 - 4c is a square in
    // the tower; for ground-coefficient steps test squares directly.
    if d == 2 {
        let coeffs = minpoly.coeffs_in(var);
        let b = &coeffs[1];
        let c = &coeffs[0];
        let lead = coeffs[2].constant_value().unwrap_or_else(|| Scalar::one(&minpoly.field));
        if let (Some(bv), Some(cv)) = (
            below.normal_form(b).constant_value(),
            below.normal_form(c).constant_value(),
        ) {
            let four = Scalar::from_i64(&minpoly.field, 4);
            let disc = bv.mul(&bv).sub(&four.mul(&lead).mul(&cv));
            if below.steps.is_empty() {
                return if disc.sqrt().is_none() {
                    Certification::Verified("quadratic-nonsquare-ground")
                } else {
                    Certification::Unverified
                };
            }
            // multiquadratic tower over the ground field: disc (a ground
            // scalar) is a square in the tower iff disc times some subset
            // product of the step discriminants is a ground square.
            if let Some(cert) = multiquadratic_square_test(below, &disc) {
                return cert;
            }
        }
        // place-style certificate: in a chain a_{k+1}^2 = t * u with u a
        // unit at t=0, the t-adic value of the new generator is half its
        // predecessor's and never integral, so x^2 - t*u stays irreducible.
        if let Some(cert) = value_group_certificate(below, var, minpoly) {
            return cert;
        }
        return Certification::Unverified;
    }
    // rational-root + quartic-resolvent search over Q for ground steps
    if below.steps.is_empty() && d <= 4 {
        if let Some(cert) = ground_low_degree_certificate(minpoly, var) {
            return cert;
        }
    }
    // full-degree primitive element: if the candidate generator has a
    // degree-(dim * d) minimal polynomial over the base in the quotient
    // algebra, the quotient is a field.
    if let Some(cert) = full_degree_certificate(below, var, minpoly) {
        return cert;
    }
    Certification::Unverified
}

/// For a tower of quadratic steps with ground-scalar discriminants
/// D_1, …, D_n: a ground scalar s is a square in the top field iff
/// s * prod_{i in S} D_i is a ground square for some subset S.
fn multiquadratic_square_test(tower: &FieldTower, s: &Scalar) -> Option<Certification> {
    let mut discs: Vec<Scalar> = Vec::new();
    for step in &tower.steps {
        let TowerStep::Algebraic { var, minpoly, .. } = step else {
            return None;
        };
        if minpoly.degree_in(var) != 2 {
            return None;
        }
        let coeffs = minpoly.coeffs_in(var);
        let b = coeffs[1].constant_value()?;
        let c = coeffs[0].constant_value()?;
        let lead = coeffs[2].constant_value()?;
        let four = Scalar::from_i64(&s.field(), 4);
        discs.push(b.mul(&b).sub(&four.mul(&lead).mul(&c)));
    }
    let n = discs.len();
    if n > 16 {
        return None;
    }
    for mask in 0u32..(1 << n) {
        let mut prod = s.clone();
        for (i, d) in discs.iter().enumerate() {
            if mask & (1 << i) != 0 {
                prod = prod.mul(d);
            }
        }
        if prod.sqrt().is_some() {
            return Some(Certification::Unverified); // s is a square up top
        }
    }
    Some(Certification::Verified("multiquadratic-nonsquare"))
}

/// t-adic value-group certificate for nested-root chains over k(t): if the
/// step is x^2 - g where g has odd t-adic value times the accumulated
/// denominator, the candidate root's value lies outside the value group.
fn value_group_certificate(
    below: &FieldTower,
    var: &Var,
    minpoly: &MPoly,
) -> Option<Certification> {
    // Track the t-adic value (as a dyadic rational num/2^k) of each
    // generator in a pure chain a_1^2 = c*t^e, a_{k+1}^2 = u * a_k with u a
    // t-unit scalar. Outside that shape, give up.
    let FieldKind::RatFun(_) = below.base else { return None };
    let mut vals: Vec<(i64, u32)> = Vec::new(); // value = num / 2^k
    for step in &below.steps {
        let TowerStep::Algebraic { var: v, minpoly: mp, .. } = step else {
            return None;
        };
        let (num, k) = step_value(below, v, mp, &vals)?;
        vals.push((num, k));
    }
    let (num, k) = step_value(below, var, minpoly, &vals)?;
    // value is num / 2^k; it lies in the group generated by 1 and the
    // previous values iff clearing 2^k keeps it integral against the lattice
    // generated by {2^k * prior values, 2^k}. For pure chains the prior
    // values have strictly smaller denominators, so irreducibility holds
    // exactly when num is odd at the maximal denominator.
    let max_prev = vals.iter().map(|&(_, kk)| kk).max().unwrap_or(0);
    if k > max_prev && num % 2 != 0 {
        return Some(Certification::Verified("t-adic-value-group"));
    }
    None
}

/// t-adic value of the new generator defined by x^2 = rhs where rhs is a
/// monomial in t and the previous generators.
fn step_value(
    below: &FieldTower,
    var: &Var,
    minpoly: &MPoly,
    prev: &[(i64, u32)],
) -> Option<(i64, u32)> {
    if minpoly.degree_in(var) != 2 {
        return None;
    }
    let coeffs = minpoly.coeffs_in(var);
    if !coeffs[1].is_zero() {
        return None;
    }
    let rhs = coeffs[0].neg();
    // rhs must be a single term: scalar * prod prev_gen^e
    if rhs.terms.len() != 1 {
        return None;
    }
    let (e, c) = rhs.terms.iter().next()?;
    let cval = t_adic_value(c)?;
    let gens = below.algebraic_vars();
    // value(rhs) = v(c) + sum e_i * value(gen_i), denominators are powers of 2
    let mut num: i64 = cval;
    let mut k: u32 = 0;
    for (i, v) in rhs.vars.iter().enumerate() {
        if e[i] == 0 {
            continue;
        }
        let gi = gens.iter().position(|g| g == v)?;
        let (pn, pk) = prev[gi];
        // bring to common denominator
        while k < pk {
            num *= 2;
            k += 1;
        }
        let scaled = pn << (k - pk);
        num += (e[i] as i64) * scaled;
    }
    // new generator's value = value(rhs) / 2
    Some((num, k + 1))
}

fn t_adic_value(c: &Scalar) -> Option<i64> {
    match c {
        Scalar::RatFun(r) => {
            let vnum = r.num.coeffs.iter().position(|x| !x.is_zero())? as i64;
            let vden = r.den.coeffs.iter().position(|x| !x.is_zero())? as i64;
            Some(vnum - vden)
        }
        _ => {
            if c.is_zero() {
                None
            } else {
                Some(0)
            }
        }
    }
}

/// Rational-root and quartic-factor search for ground steps over Q of
/// degree at most 4 with integer-like coefficients.
fn ground_low_degree_certificate(minpoly: &MPoly, var: &Var) -> Option<Certification> {
    if minpoly.field != FieldKind::Q {
        return None;
    }
    let coeffs: Vec<Scalar> = minpoly
        .coeffs_in(var)
        .into_iter()
        .map(|c| c.constant_value())
        .collect::<Option<Vec<_>>>()?;
    let d = coeffs.len() - 1;
    // rational root test candidates: p/q with p | c0*den-lcm, q | lead
    let has_root = rational_root_exists(&coeffs);
    if d <= 3 {
        return Some(if has_root {
            Certification::Unverified
        } else {
            Certification::Verified("no-rational-root")
        });
    }
    if has_root {
        return Some(Certification::Unverified);
    }
    // degree 4, no linear factor: check for quadratic factors
    // x^4 + a3 x^3 + a2 x^2 + a1 x + a0 = (x^2+px+q)(x^2+rx+s)
    // brute-force over small integer p,q,r,s after clearing to monic integers
    if quartic_quadratic_factor_exists(&coeffs) {
        return Some(Certification::Unverified);
    }
    Some(Certification::Verified("quartic-no-factor"))
}

fn rational_root_exists(coeffs: &[Scalar]) -> bool {
    use num::bigint::BigInt;
    use num::rational::BigRational;
    use num::One;
    let rats: Vec<BigRational> = coeffs
        .iter()
        .map(|c| match c {
            Scalar::Rat(r) => r.clone(),
            _ => BigRational::from_integer(BigInt::from(0)),
        })
        .collect();
    // clear denominators
    let mut lcm = BigInt::one();
    for r in &rats {
        lcm = num::integer::lcm(lcm.clone(), r.denom().clone());
    }
    let ints: Vec<BigInt> = rats.iter().map(|r| r.numer() * (&lcm / r.denom())).collect();
    let c0 = ints[0].clone();
    let lead = ints.last().unwrap().clone();
    if c0 == BigInt::from(0) {
        return true;
    }
    let p_divs = small_divisors(&c0);
    let q_divs = small_divisors(&lead);
    for p in &p_divs {
        for q in &q_divs {
            for sgn in [1i64, -1] {
                let cand = BigRational::new(p * BigInt::from(sgn), q.clone());
                let mut acc = BigRational::from_integer(BigInt::from(0));
                for c in ints.iter().rev() {
                    acc = acc * &cand + BigRational::from_integer(c.clone());
                }
                if acc == BigRational::from_integer(BigInt::from(0)) {
                    return true;
                }
            }
        }
    }
    false
}

fn small_divisors(n: &num::bigint::BigInt) -> Vec<num::bigint::BigInt> {
    use num::bigint::BigInt;
    use num::Signed;
    let a = n.abs();
    let mut out = Vec::new();
    let mut d = BigInt::from(1);
    // divisors up to 10^4; adequate for curated inputs
    while &d * &d <= a && d < BigInt::from(10_000) {
        if (&a % &d) == BigInt::from(0) {
            out.push(d.clone());
            out.push(&a / &d);
        }
        d += 1;
    }
    out
}

fn quartic_quadratic_factor_exists(coeffs: &[Scalar]) -> bool {
    // monic normalize over Q, search integer quadratic factors with
    // coefficients bounded by |constant| products
    let lead = coeffs[4].clone();
    let a: Vec<Scalar> = coeffs.iter().map(|c| c.div(&lead)).collect();
    let bound = 40i64;
    let field = FieldKind::Q;
    for p in -bound..=bound {
        for q in -bound..=bound {
            if q == 0 {
                continue;
            }
            // divide x^4+a3x^3+a2x^2+a1x+a0 by x^2+px+q, check remainder
            let pq = Scalar::from_i64(&field, p);
            let qq = Scalar::from_i64(&field, q);
            // synthetic division
            let b3 = a[3].sub(&pq);
            let b2 = a[2].sub(&pq.mul(&b3)).sub(&qq);
            let r1 = a[1].sub(&pq.mul(&b2)).sub(&qq.mul(&b3));
            let r0 = a[0].sub(&qq.mul(&b2));
            if r1.is_zero() && r0.is_zero() {
                return true;
            }
        }
    }
    false
}

/// If `var` adjoined with `minpoly` gives an element whose minimal
/// polynomial over the base has full degree dim(below) * deg(minpoly), the
/// extension is a field and the step is irreducible.
fn full_degree_certificate(
    below: &FieldTower,
    var: &Var,
    minpoly: &MPoly,
) -> Option<Certification> {
    let d = minpoly.degree_in(var) as u64;
    let full = below.dim() * d;
    if full > 64 {
        return None; // too large to be worth the linear algebra
    }
    let mut probe = below.clone();
    probe.push_algebraic(var.clone(), minpoly.clone(), false);
    // find a primitive candidate: var + small multiples of lower generators
    let gens = below.algebraic_vars();
    let vp = MPoly::var(&minpoly.field, var.clone());
    for c in 0..4i64 {
        let mut cand = vp.clone();
        for (i, g) in gens.iter().enumerate() {
            let w = Scalar::from_i64(&minpoly.field, c * (i as i64 + 1));
            cand = cand.add(&MPoly::var(&minpoly.field, g.clone()).scale(&w));
        }
        if let Some(deg) = probe.element_degree(&cand) {
            if deg == full {
                return Some(Certification::Verified("full-degree-primitive-element"));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(name: &str, g: u32, s: u32) -> Var {
        Var::new(name, g, s)
    }

    fn qc(n: i64) -> MPoly {
        MPoly::constant(Scalar::from_i64(&FieldKind::Q, n))
    }

    #[test]
    fn sqrt2_tower_arithmetic() {
        let a = v("a", 0, 0);
        let ap = MPoly::var(&FieldKind::Q, a.clone());
        let mut t = FieldTower::new(FieldKind::Q);
        t.push_algebraic(a.clone(), ap.mul(&ap).sub(&qc(2)), true);
        assert_eq!(t.degree().0, Some(2));
        // (1 + a)^2 = 3 + 2a
        let e = qc(1).add(&ap);
        let sq = t.normal_form(&e.mul(&e));
        assert_eq!(sq, qc(3).add(&ap.scale(&Scalar::from_i64(&FieldKind::Q, 2))));
        // inverse of a is a/2
        let inv = t.invert(&ap).unwrap();
        assert!(t.normal_form(&inv.mul(&ap)).sub(&qc(1)).is_zero());
    }

    #[test]
    fn minpoly_of_sum_of_roots() {
        // Q(sqrt2, sqrt3): minpoly of sqrt2+sqrt3 is x^4 - 10x^2 + 1
        let a = v("a", 0, 0);
        let b = v("b", 1, 0);
        let ap = MPoly::var(&FieldKind::Q, a.clone());
        let bp = MPoly::var(&FieldKind::Q, b.clone());
        let mut t = FieldTower::new(FieldKind::Q);
        t.push_algebraic(a.clone(), ap.mul(&ap).sub(&qc(2)), true);
        t.push_algebraic(b.clone(), bp.mul(&bp).sub(&qc(3)), true);
        let mp = t.minpoly_over_base(&ap.add(&bp)).unwrap();
        let q = |n: i64| Scalar::from_i64(&FieldKind::Q, n);
        assert_eq!(mp, vec![q(1), q(0), q(-10), q(0), q(1)]);
        assert_eq!(t.element_degree(&ap.add(&bp)), Some(4));
        assert_eq!(t.element_degree(&ap), Some(2));
    }

    #[test]
    fn certify_quadratics_over_q() {
        let a = v("a", 0, 0);
        let ap = MPoly::var(&FieldKind::Q, a.clone());
        let t = FieldTower::new(FieldKind::Q);
        // x^2 - 2 irreducible
        assert_eq!(
            certify_irreducible(&t, &a, &ap.mul(&ap).sub(&qc(2))),
            Certification::Verified("quadratic-nonsquare-ground")
        );
        // x^2 - 4 reducible
        assert_eq!(
            certify_irreducible(&t, &a, &ap.mul(&ap).sub(&qc(4))),
            Certification::Unverified
        );
    }

    #[test]
    fn certify_multiquadratic() {
        // over Q(sqrt2), x^2 - 3 is irreducible: 3, 3*8 ( disc of x^2-2 is 8 ) not squares
        let a = v("a", 0, 0);
        let b = v("b", 1, 0);
        let ap = MPoly::var(&FieldKind::Q, a.clone());
        let bp = MPoly::var(&FieldKind::Q, b.clone());
        let mut t = FieldTower::new(FieldKind::Q);
        t.push_algebraic(a.clone(), ap.mul(&ap).sub(&qc(2)), true);
        assert_eq!(
            certify_irreducible(&t, &b, &bp.mul(&bp).sub(&qc(3))),
            Certification::Verified("multiquadratic-nonsquare")
        );
        // x^2 - 2 over Q(sqrt2) is reducible: 2 * disc(x^2-2)=16 is a square
        assert_eq!(
            certify_irreducible(&t, &b, &bp.mul(&bp).sub(&qc(2))),
            Certification::Unverified
        );
    }

    #[test]
    fn certify_nested_roots_by_value_group() {
        // over Q(t): a1^2 = t, a2^2 = a1, ... stays irreducible at each step
        let k = FieldKind::rat_fun_q();
        let tc = MPoly::constant(Scalar::t_var(&k));
        let a1 = v("a1", 0, 1);
        let a2 = v("a2", 0, 2);
        let a1p = MPoly::var(&k, a1.clone());
        let a2p = MPoly::var(&k, a2.clone());
        let mut t = FieldTower::new(k.clone());
        let m1 = a1p.mul(&a1p).sub(&tc);
        assert!(matches!(
            certify_irreducible(&t, &a1, &m1),
            Certification::Verified(_)
        ));
        t.push_algebraic(a1.clone(), m1, true);
        let m2 = a2p.mul(&a2p).sub(&a1p);
        assert_eq!(
            certify_irreducible(&t, &a2, &m2),
            Certification::Verified("t-adic-value-group")
        );
    }

    #[test]
    fn certify_quartic_over_q() {
        // x^4 - 10x^2 + 1 irreducible over Q
        let a = v("a", 0, 0);
        let ap = MPoly::var(&FieldKind::Q, a.clone());
        let p = ap.pow(4).sub(&ap.pow(2).scale(&Scalar::from_i64(&FieldKind::Q, 10))).add(&qc(1));
        let t = FieldTower::new(FieldKind::Q);
        assert_eq!(
            certify_irreducible(&t, &a, &p),
            Certification::Verified("quartic-no-factor")
        );
        // x^4 - 4 = (x^2-2)(x^2+2) reducible
        let r = ap.pow(4).sub(&qc(4));
        assert_eq!(certify_irreducible(&t, &a, &r), Certification::Unverified);
    }

    #[test]
    fn transcendental_step_gives_infinite_degree() {
        let a = v("a", 0, 0);
        let mut t = FieldTower::new(FieldKind::Q);
        t.push_transcendental(a);
        assert_eq!(t.degree().0, None);
    }
}
