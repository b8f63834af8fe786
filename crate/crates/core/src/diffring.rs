//! Difference polynomial rings R{x_1,…,x_n}: polynomials in variables
//! x_{j,i} (generator j, shift i) where σ shifts i -> i+1 and acts on
//! coefficients through the ground field rule. σ-ideals with bounded
//! σ/well-mixed/perfect closures, fixed-prime tests, and rational points
//! over finite difference fields.

use crate::ground::{frobenius_fixed_elements, DiffGroundField, Gf, GfElem, SigmaRule};
use crate::ideal::{ideal_membership, Membership};
use crate::multipoly::{MPoly, Var};
use crate::scalar::Scalar;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// The ambient difference polynomial ring.
#[derive(Clone, Debug, PartialEq)]
pub struct DiffPolyRing {
    pub ground: DiffGroundField,
    pub gen_names: Vec<String>,
}

impl DiffPolyRing {
    pub fn new(ground: DiffGroundField, gen_names: &[&str]) -> DiffPolyRing {
        DiffPolyRing { ground, gen_names: gen_names.iter().map(|s| s.to_string()).collect() }
    }

    /// The variable x_{j,i}.
    pub fn var(&self, gen: usize, shift: u32) -> Var {
        assert!(gen < self.gen_names.len(), "generator index out of range");
        Var::new(
            &format!("{}@{}", self.gen_names[gen], shift),
            gen as u32,
            shift,
        )
    }

    pub fn var_poly(&self, gen: usize, shift: u32) -> MPoly {
        MPoly::var(&self.ground.kind, self.var(gen, shift))
    }

    /// Highest shift index appearing in `f`.
    pub fn order(&self, f: &MPoly) -> u32 {
        f.vars.iter().map(|v| v.key.1).max().unwrap_or(0)
    }

    /// Apply σ^k: shift every variable index by k and σ₀^k on coefficients.
    pub fn sigma_apply(&self, f: &MPoly, k: u32) -> MPoly {
        let mut out = f.rename_vars(|v| {
            let mut name = v.name.clone();
            if let Some(at) = v.name.rfind('@') {
                let idx: u32 = v.name[at + 1..].parse().expect("malformed shifted variable");
                name = format!("{}@{}", &v.name[..at], idx + k);
            }
            Var::new(&name, v.key.0, v.key.1 + k)
        });
        for _ in 0..k {
            out = out.map_coeffs(|c| self.ground.apply_sigma(c));
        }
        out
    }
}

/// A σ-ideal given by generators, with bounded closure status flags.
#[derive(Clone, Debug)]
pub struct SigmaIdeal {
    pub ring: DiffPolyRing,
    pub gens: Vec<MPoly>,
    pub sigma_closed_to: Option<u32>,
    pub well_mixed_to: Option<u32>,
    pub perfect_to: Option<u32>,
    /// set when perfect closure's candidate pool may have missed factors
    pub incomplete_pool: bool,
}

impl SigmaIdeal {
    pub fn new(ring: DiffPolyRing, gens: Vec<MPoly>) -> SigmaIdeal {
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        SigmaIdeal {
            ring,
            gens,
            sigma_closed_to: None,
            well_mixed_to: None,
            perfect_to: None,
            incomplete_pool: false,
        }
    }

    fn push_new(&mut self, p: MPoly, effort: u64) -> bool {
        if p.is_zero() {
            return false;
        }
        if ideal_membership(&p, &self.gens, effort).is_in() {
            return false;
        }
        self.gens.push(p);
        true
    }

    /// Add σ^k-images of all generators for k up to `order`.
    pub fn sigma_close(&self, order: u32) -> SigmaIdeal {
        self.sigma_close_capped(order, u32::MAX)
    }

    fn sigma_close_capped(&self, order: u32, cap: u32) -> SigmaIdeal {
        let mut out = self.clone();
        let base = out.gens.clone();
        for g in &base {
            for k in 1..=order {
                let s = out.ring.sigma_apply(g, k);
                if max_shift(&s) <= cap && !out.gens.contains(&s) {
                    out.gens.push(s);
                }
            }
        }
        out.sigma_closed_to = Some(order);
        out
    }

    /// All closure passes stay below this shift so fixpoints terminate.
    fn shift_ceiling(&self, order: u32) -> u32 {
        self.gens.iter().map(max_shift).max().unwrap_or(0) + order
    }

    /// Candidate factors of the generators: variables, and binomial/linear
    /// factors discovered by content splitting and repeated-structure checks.
    fn candidate_pool(&self, order: u32, cap: u32) -> (Vec<MPoly>, bool) {
        let mut pool: Vec<MPoly> = Vec::new();
        let mut complete = true;
        for g in &self.gens {
            let fs = split_factors(g);
            if fs.len() == 1 && fs[0].total_degree() > 1 {
                // couldn't factor a nonlinear generator; pool may be short
                complete = false;
            }
            for f in fs {
                if max_shift(&f) <= cap && !pool.contains(&f) {
                    pool.push(f);
                }
            }
        }
        // close the pool under σ up to the order bound
        let base = pool.clone();
        for f in &base {
            for k in 1..=order {
                let s = self.ring.sigma_apply(f, k);
                if max_shift(&s) <= cap && !pool.contains(&s) {
                    pool.push(s);
                }
            }
        }
        (pool, complete)
    }

    /// Bounded well-mixed closure: whenever a product a·b of pool elements
    /// lies in the ideal, add a·σ(b).
    pub fn well_mixed_close(&self, order: u32, effort: u64) -> SigmaIdeal {
        self.well_mixed_close_capped(order, effort, self.shift_ceiling(order))
    }

    fn well_mixed_close_capped(&self, order: u32, effort: u64, cap: u32) -> SigmaIdeal {
        let mut out = self.sigma_close_capped(order, cap);
        let (pool, complete) = out.candidate_pool(order, cap);
        out.incomplete_pool |= !complete;
        loop {
            let mut changed = false;
            for a in &pool {
                for b in &pool {
                    let prod = a.mul(b);
                    if prod.total_degree() > effort {
                        continue;
                    }
                    if !ideal_membership(&prod, &out.gens, effort).is_in() {
                        continue;
                    }
                    let mixed = a.mul(&out.ring.sigma_apply(b, 1));
                    if max_shift(&mixed) > cap {
                        continue;
                    }
                    let mut next = out.clone();
                    if next.push_new(mixed, effort) {
                        out = next;
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        out.well_mixed_to = Some(order);
        out
    }

    /// Bounded perfect closure: fixpoint of radical, well-mixed, and the
    /// shuffle rule a·σ(a) ∈ I ⟹ a ∈ I over the candidate pool.
    pub fn perfect_close(&self, order: u32, effort: u64) -> SigmaIdeal {
        let cap = self.shift_ceiling(order);
        let mut out = self.well_mixed_close_capped(order, effort, cap);
        loop {
            let mut changed = false;
            let (pool, complete) = out.candidate_pool(order, cap);
            out.incomplete_pool |= !complete;
            for a in &pool {
                if ideal_membership(a, &out.gens, effort).is_in() {
                    continue;
                }
                // radical rule: a^k in I for small k
                let mut in_radical = false;
                let mut pw = a.clone();
                for _ in 0..3 {
                    pw = pw.mul(a);
                    if pw.total_degree() > effort {
                        break;
                    }
                    if ideal_membership(&pw, &out.gens, effort).is_in() {
                        in_radical = true;
                        break;
                    }
                }
                // shuffle rule: a * σ(a) in I
                let shuffled = a.mul(&out.ring.sigma_apply(a, 1));
                let in_shuffle = shuffled.total_degree() <= effort
                    && ideal_membership(&shuffled, &out.gens, effort).is_in();
                if in_radical || in_shuffle {
                    let mut next = out.clone();
                    if next.push_new(a.clone(), effort) {
                        out = next.well_mixed_close_capped(order, effort, cap);
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        out.perfect_to = Some(order);
        out
    }

    pub fn contains(&self, f: &MPoly, effort: u64) -> Membership {
        ideal_membership(f, &self.gens, effort)
    }
}

/// Largest shift index appearing in a polynomial.
pub fn max_shift(p: &MPoly) -> u32 {
    p.vars.iter().map(|v| v.key.1).max().unwrap_or(0)
}

/// Split obvious factors: pull out single-variable factors (content in each
/// variable) and recognize products of distinct linear pieces via square-free
/// structure in one variable. Conservative: returns the poly itself when no
/// factor is found.
pub fn split_factors(p: &MPoly) -> Vec<MPoly> {
    if p.is_zero() || p.is_constant() {
        return vec![];
    }
    let mut rest = p.clone();
    let mut out: Vec<MPoly> = Vec::new();
    // variable content: x^k divides p
    for v in p.vars.clone() {
        loop {
            let pos = rest.vars.iter().position(|w| *w == v);
            let Some(i) = pos else { break };
            if rest.terms.keys().all(|e| e[i] >= 1) {
                let vp = MPoly::var(&p.field, v.clone());
                rest = rest.exact_div(&vp);
                if !out.contains(&vp) {
                    out.push(vp);
                }
            } else {
                break;
            }
        }
    }
    if rest.is_constant() {
        return out;
    }
    // univariate in a single variable: try factoring out roots 0, ±1, ±2
    if rest.vars.len() == 1 {
        let v = rest.vars[0].clone();
        let vp = MPoly::var(&p.field, v.clone());
        for r in [-2i64, -1, 1, 2] {
            loop {
                let val = rest.substitute(&v, &MPoly::constant(Scalar::from_i64(&p.field, r)));
                if val.is_zero() && rest.total_degree() >= 1 {
                    let lin = vp.sub(&MPoly::constant(Scalar::from_i64(&p.field, r)));
                    rest = rest.exact_div(&lin);
                    if !out.contains(&lin) {
                        out.push(lin);
                    }
                } else {
                    break;
                }
            }
        }
    }
    if !rest.is_constant() && !out.contains(&rest) {
        out.push(rest);
    }
    out
}

/// Fixed-prime verdict at a truncation order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FixedPrime {
    Fixed,
    NotFixed,
    UndecidedAtBound,
}

/// Test σ^{-1}(p) = p generator-wise at a truncation. The prime is given by
/// `prime` together with the σ-closed relations of `ambient` (the defining
/// equations of the ring, which belong to every prime considered). Forward:
/// σ(g) must fall back into the prime for each prime generator g. Backward:
/// each prime generator must be recoverable from the σ-images of the prime
/// generators modulo the relations.
pub fn is_fixed_prime(
    prime: &[MPoly],
    ambient: &SigmaIdeal,
    order: u32,
    effort: u64,
) -> FixedPrime {
    let relations = ambient.sigma_close(order).gens;
    let mut full: Vec<MPoly> = prime.to_vec();
    full.extend(relations.iter().cloned());
    let mut undecided = false;
    // forward: σ(p) ⊆ p
    for g in prime {
        let sg = ambient.ring.sigma_apply(g, 1);
        match ideal_membership(&sg, &full, effort) {
            Membership::In { .. } => {}
            Membership::NotIn { .. } => return FixedPrime::NotFixed,
            Membership::UndecidedAtBound { .. } => undecided = true,
        }
    }
    // backward: p ⊆ σ(p) modulo the relations
    let mut shifted: Vec<MPoly> =
        prime.iter().map(|g| ambient.ring.sigma_apply(g, 1)).collect();
    shifted.extend(relations.iter().cloned());
    for g in prime {
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

/// Truncation of the ring at shift ≤ N: the generators of order ≤ N after
/// σ-closing to N.
pub fn truncate(ideal: &SigmaIdeal, n: u32) -> Vec<MPoly> {
    let closed = ideal.sigma_close(n);
    closed
        .gens
        .iter()
        .filter(|g| closed.ring.order(g) <= n)
        .cloned()
        .collect()
}

/// A (K,φ)-rational point: one field element per ring generator.
pub type RationalPoint = Vec<GfElem>;

/// Enumerate all (GF(p^m), Frob^e)-rational points of the relations:
/// assignments a_j with every generator vanishing under x_{j,i} -> φ^i(a_j).
pub fn rational_points(
    ideal: &SigmaIdeal,
    gf: &Gf,
    frob_power: u32,
) -> Vec<RationalPoint> {
    let n = ideal.ring.gen_names.len();
    let els = gf.elements();
    let total = els.len().pow(n as u32);
    let eval_at = |idx: usize| -> Option<RationalPoint> {
        let mut point = Vec::with_capacity(n);
        let mut c = idx;
        for _ in 0..n {
            point.push(els[c % els.len()].clone());
            c /= els.len();
        }
        for g in &ideal.gens {
            if !point_satisfies(gf, frob_power, g, &point) {
                return None;
            }
        }
        Some(point)
    };
    let mut pts: Vec<RationalPoint> = collect_points(total, &eval_at);
    pts.sort();
    pts
}

#[cfg(feature = "parallel")]
fn collect_points(
    total: usize,
    eval_at: &(dyn Fn(usize) -> Option<RationalPoint> + Sync),
) -> Vec<RationalPoint> {
    (0..total).into_par_iter().filter_map(eval_at).collect()
}

#[cfg(not(feature = "parallel"))]
fn collect_points(
    total: usize,
    eval_at: &(dyn Fn(usize) -> Option<RationalPoint> + Sync),
) -> Vec<RationalPoint> {
    (0..total).filter_map(eval_at).collect()
}

/// Sequential enumeration irrespective of the feature flag (benchmark baseline).
pub fn rational_points_sequential(
    ideal: &SigmaIdeal,
    gf: &Gf,
    frob_power: u32,
) -> Vec<RationalPoint> {
    let n = ideal.ring.gen_names.len();
    let els = gf.elements();
    let total = els.len().pow(n as u32);
    let mut pts: Vec<RationalPoint> = (0..total)
        .filter_map(|idx| {
            let mut point = Vec::with_capacity(n);
            let mut c = idx;
            for _ in 0..n {
                point.push(els[c % els.len()].clone());
                c /= els.len();
            }
            for g in &ideal.gens {
                if !point_satisfies(gf, frob_power, g, &point) {
                    return None;
                }
            }
            Some(point)
        })
        .collect();
    pts.sort();
    pts
}

fn point_satisfies(gf: &Gf, frob_power: u32, g: &MPoly, point: &[GfElem]) -> bool {
    let mut acc = gf.zero();
    for (e, c) in &g.terms {
        let cv = match c {
            Scalar::Fp { val, .. } => gf.from_u64(*val),
            Scalar::Rat(r) => {
                // integer coefficients embed through reduction mod p
                use num::ToPrimitive;
                let num = (r.numer() % num::BigInt::from(gf.p))
                    .to_i64()
                    .unwrap()
                    .rem_euclid(gf.p as i64) as u64;
                let den = (r.denom() % num::BigInt::from(gf.p))
                    .to_i64()
                    .unwrap()
                    .rem_euclid(gf.p as i64) as u64;
                assert!(den != 0, "denominator vanishes mod p");
                let deninv = gf.pow(&gf.from_u64(den), gf.p.pow(gf.m) - 2);
                gf.mul(&gf.from_u64(num), &deninv)
            }
            _ => panic!("unsupported coefficient field for finite points"),
        };
        let mut term = cv;
        for (i, &exp) in e.iter().enumerate() {
            if exp == 0 {
                continue;
            }
            let v = &g.vars[i];
            let gen = v.key.0 as usize;
            let shift = v.key.1;
            let mut val = point[gen].clone();
            for _ in 0..shift {
                val = gf.frobenius(&val, frob_power);
            }
            term = gf.mul(&term, &gf.pow(&val, exp as u64));
        }
        acc = gf.add(&acc, &term);
    }
    gf.is_zero(&acc)
}

/// σ-fixed scalars of (GF(p^m), Frob^e) — the "constants" of the difference
/// field; exported for fiber computations.
pub fn fixed_subfield(gf: &Gf, frob_power: u32) -> Vec<GfElem> {
    frobenius_fixed_elements(gf, frob_power)
}

/// A finite Σ-structure: named endomorphism rules with a commutation table
/// σ^τ. The table must satisfy τ∘σ^τ = σ∘τ on the ring generators.
#[derive(Clone, Debug)]
pub struct SigmaSet {
    /// per operator: image of each ring generator's whole prolongation
    /// sequence is determined by the image of x_{j,0} (a polynomial) plus
    /// the ground rule.
    pub names: Vec<String>,
    pub gen_images: Vec<Vec<MPoly>>,
    pub ground_rules: Vec<SigmaRule>,
    /// commutation table: table[s][t] = index of σ^τ where σ = s, τ = t
    pub table: Vec<Vec<usize>>,
}

impl SigmaSet {
    /// Verify τ∘σ^τ = σ∘τ on each generator x_{j,0}, to first order, and
    /// the table identity (σ^τ)^φ = (σ^φ)^(τ^φ).
    pub fn verify(&self, ring: &DiffPolyRing) -> Result<(), String> {
        let n = self.names.len();
        for s in 0..n {
            for t in 0..n {
                let st = self.table[s][t];
                for j in 0..ring.gen_names.len() {
                    // τ(σ^τ(x_j)) must equal σ(τ(x_j)) as polynomials
                    let lhs = apply_rule(ring, &self.gen_images[t], &self.gen_images[st], j);
                    let rhs = apply_rule(ring, &self.gen_images[s], &self.gen_images[t], j);
                    if !lhs.sub(&rhs).is_zero() {
                        return Err(format!(
                            "commutation fails: {}∘{}^{} != {}∘{} on generator {}",
                            self.names[t], self.names[s], self.names[t],
                            self.names[s], self.names[t], ring.gen_names[j]
                        ));
                    }
                }
            }
        }
        // table identity on indices
        for s in 0..n {
            for t in 0..n {
                for ph in 0..n {
                    let lhs = self.table[self.table[s][t]][ph];
                    let rhs = self.table[self.table[s][ph]][self.table[t][ph]];
                    if lhs != rhs {
                        return Err("commutation table not self-consistent".to_string());
                    }
                }
            }
        }
        Ok(())
    }
}

/// outer ∘ inner on generator j: substitute inner's image into outer's image
/// variables (both are maps x_{j,0} -> polynomial in the x_{*,0}).
fn apply_rule(ring: &DiffPolyRing, outer: &[MPoly], inner: &[MPoly], j: usize) -> MPoly {
    // compute outer(inner(x_j)): first apply inner to x_j, then map each
    // variable x_k of the result through outer
    let mut out = inner[j].clone();
    for k in 0..ring.gen_names.len() {
        let v = ring.var(k, 0);
        // substitution must be simultaneous; use temporaries
        let tmp = Var::new(&format!("__tmp{}", k), 1000 + k as u32, 0);
        out = out.rename_vars(|w| if *w == v { tmp.clone() } else { w.clone() });
    }
    for k in 0..ring.gen_names.len() {
        let tmp = Var::new(&format!("__tmp{}", k), 1000 + k as u32, 0);
        out = out.substitute(&tmp, &outer[k]);
    }
    out
}
