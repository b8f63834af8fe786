//! Polynomial ideal membership via Buchberger with a total-degree cap.
//! Every answer carries a certificate: cofactors for membership, a
//! degree-bounded complete basis for non-membership, or an explicit
//! "undecided at this bound" outcome.

use crate::multipoly::{MPoly, TermOrder, Var};
use crate::scalar::{FieldKind, Scalar};

/// Outcome of a bounded ideal-membership query.
#[derive(Clone, Debug)]
pub enum Membership {
    /// `f = sum cofactors_i * generators_i`; the combination is re-checked
    /// before being returned.
    In { cofactors: Vec<MPoly> },
    /// The Groebner basis below the degree bound is complete (no S-poly
    /// escapes the bound) and `f` does not reduce to zero.
    NotIn { basis: Vec<MPoly> },
    /// Basis computation hit the degree cap before completion and `f` did
    /// not reduce to zero against the partial basis.
    UndecidedAtBound { bound: u64 },
}

impl Membership {
    pub fn is_in(&self) -> bool {
        matches!(self, Membership::In { .. })
    }
    pub fn is_not_in(&self) -> bool {
        matches!(self, Membership::NotIn { .. })
    }
}

/// A polynomial together with its expression in the original generators.
#[derive(Clone, Debug)]
struct Tracked {
    poly: MPoly,
    // combination over the original generator list
    combo: Vec<MPoly>,
}

fn lcm_exp(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn mono(field: &FieldKind, vars: &[Var], e: Vec<u32>, c: Scalar) -> MPoly {
    MPoly { field: field.clone(), vars: vars.to_vec(), terms: [(e, c)].into_iter().collect() }
}

/// Tracked reduction of `p` by `basis`: returns (remainder, combination)
/// with p = remainder + sum combination_i over original generators.
fn reduce_tracked(
    p: &MPoly,
    p_combo: &[MPoly],
    basis: &[Tracked],
    vars: &[Var],
    order: TermOrder,
    field: &FieldKind,
) -> (MPoly, Vec<MPoly>) {
    let ngens = p_combo.len();
    let mut rem = MPoly::zero(field);
    let mut work = p.embed(vars);
    let mut combo: Vec<MPoly> = p_combo.to_vec();
    let lts: Vec<(Vec<u32>, Scalar)> = basis
        .iter()
        .map(|t| t.poly.leading_term(order).unwrap())
        .collect();
    loop {
        work = work.embed(vars);
        let Some((e, c)) = work.leading_term(order) else { break };
        let mut reduced = false;
        for (i, (le, lc)) in lts.iter().enumerate() {
            if e.iter().zip(le).all(|(a, b)| a >= b) {
                let qe: Vec<u32> = e.iter().zip(le).map(|(a, b)| a - b).collect();
                let q = mono(field, vars, qe, c.div(lc));
                work = work.sub(&q.mul(&basis[i].poly.embed(vars)));
                for g in 0..ngens {
                    combo[g] = combo[g].sub(&q.mul(&basis[i].combo[g]));
                }
                reduced = true;
                break;
            }
        }
        if !reduced {
            let m = mono(field, vars, e, c);
            rem = rem.add(&m);
            work = work.sub(&m);
        }
    }
    (rem, combo)
}

/// Bounded Buchberger membership test for `f` in the ideal generated by
/// `gens`, under grlex. `bound` caps the total degree of any S-polynomial
/// processed.
pub fn ideal_membership(f: &MPoly, gens: &[MPoly], bound: u64) -> Membership {
    ideal_membership_ordered(f, gens, bound, TermOrder::GrLex)
}

pub fn ideal_membership_ordered(
    f: &MPoly,
    gens: &[MPoly],
    bound: u64,
    order: TermOrder,
) -> Membership {
    let field = f.field.clone();
    let mut vars: Vec<Var> = f.vars.clone();
    for g in gens {
        for v in &g.vars {
            if !vars.contains(v) {
                vars.push(v.clone());
            }
        }
    }
    vars.sort();
    let (basis, complete) = groebner_tracked(gens, &vars, bound, order, &field);

    let zero_combo = vec![MPoly::zero(&field); gens.len()];
    let (rem, combo) = reduce_tracked(f, &zero_combo, &basis, &vars, order, &field);
    if rem.is_zero() {
        // combination computed for f - rem: f = -sum combo. Verify.
        let cofactors: Vec<MPoly> = combo.iter().map(|c| c.neg()).collect();
        let mut check = MPoly::zero(&field);
        for (c, g) in cofactors.iter().zip(gens) {
            check = check.add(&c.mul(g));
        }
        assert!(check.sub(f).is_zero(), "cofactor certificate failed");
        return Membership::In { cofactors };
    }
    if complete {
        Membership::NotIn { basis: basis.into_iter().map(|t| t.poly).collect() }
    } else {
        Membership::UndecidedAtBound { bound }
    }
}

/// Buchberger with tracked combinations. Returns (basis, complete?).
fn groebner_tracked(
    gens: &[MPoly],
    vars: &[Var],
    bound: u64,
    order: TermOrder,
    field: &FieldKind,
) -> (Vec<Tracked>, bool) {
    let mut basis: Vec<Tracked> = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        if g.is_zero() {
            continue;
        }
        let mut combo = vec![MPoly::zero(field); gens.len()];
        combo[i] = MPoly::one(field);
        basis.push(Tracked { poly: g.embed(vars), combo });
    }
    let mut complete = true;
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            pairs.push((i, j));
        }
    }
    while let Some((i, j)) = pairs.pop() {
        let (ei, ci) = basis[i].poly.leading_term(order).unwrap();
        let (ej, cj) = basis[j].poly.leading_term(order).unwrap();
        let l = lcm_exp(&ei, &ej);
        let ldeg: u64 = l.iter().map(|&x| x as u64).sum();
        if ldeg > bound {
            complete = false;
            continue;
        }
        // coprime leading terms: S-poly reduces to zero
        if ei.iter().zip(&ej).all(|(a, b)| *a == 0 || *b == 0) {
            continue;
        }
        let qi: Vec<u32> = l.iter().zip(&ei).map(|(a, b)| a - b).collect();
        let qj: Vec<u32> = l.iter().zip(&ej).map(|(a, b)| a - b).collect();
        let mi = mono(field, vars, qi, ci.inv());
        let mj = mono(field, vars, qj, cj.inv());
        let spoly = mi.mul(&basis[i].poly).sub(&mj.mul(&basis[j].poly));
        let mut scombo = vec![MPoly::zero(field); gens.len()];
        for g in 0..gens.len() {
            scombo[g] = mi.mul(&basis[i].combo[g]).sub(&mj.mul(&basis[j].combo[g]));
        }
        let (rem, rcombo) = reduce_tracked(&spoly, &scombo, &basis, vars, order, field);
        if rem.is_zero() {
            continue;
        }
        if rem.total_degree() > bound {
            complete = false;
            continue;
        }
        let new_idx = basis.len();
        for k in 0..new_idx {
            pairs.push((k, new_idx));
        }
        basis.push(Tracked { poly: rem.embed(vars), combo: rcombo });
    }
    (basis, complete)
}

/// Reduced Groebner basis under grlex, when computable below the bound.
pub fn groebner_basis(gens: &[MPoly], bound: u64, order: TermOrder) -> Option<Vec<MPoly>> {
    if gens.iter().all(|g| g.is_zero()) {
        return Some(vec![]);
    }
    let field = gens[0].field.clone();
    let mut vars: Vec<Var> = Vec::new();
    for g in gens {
        for v in &g.vars {
            if !vars.contains(v) {
                vars.push(v.clone());
            }
        }
    }
    vars.sort();
    let (basis, complete) = groebner_tracked(gens, &vars, bound, order, &field);
    if !complete {
        return None;
    }
    // inter-reduce
    let polys: Vec<MPoly> = basis.iter().map(|t| t.poly.clone()).collect();
    let mut reduced: Vec<MPoly> = Vec::new();
    for (i, p) in polys.iter().enumerate() {
        let others: Vec<MPoly> = polys
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, q)| q.clone())
            .collect();
        let (_, r) = p.div_mod(&others, order);
        if !r.is_zero() {
            let (_, lc) = r.leading_term(order).unwrap();
            reduced.push(r.scale(&lc.inv()));
        }
    }
    reduced.sort_by(|a, b| format!("{}", a).cmp(&format!("{}", b)));
    reduced.dedup();
    Some(reduced)
}

/// Ideal intersection via the standard one-variable trick:
/// I ∩ J = (w·I + (1-w)·J) ∩ k[X], eliminating w.
pub fn ideal_intersection(
    i_gens: &[MPoly],
    j_gens: &[MPoly],
    bound: u64,
) -> Option<Vec<MPoly>> {
    let field = i_gens
        .iter()
        .chain(j_gens)
        .next()
        .map(|g| g.field.clone())
        .unwrap_or(FieldKind::Q);
    // w must be the largest variable so Elim(1) kills it
    let w = Var::new("_w", u32::MAX, u32::MAX);
    let wp = MPoly::var(&field, w.clone());
    let one = MPoly::one(&field);
    let mut gens: Vec<MPoly> = Vec::new();
    for g in i_gens {
        gens.push(wp.mul(g));
    }
    for g in j_gens {
        gens.push(one.sub(&wp).mul(g));
    }
    let basis = groebner_basis(&gens, bound, TermOrder::Elim(1))?;
    Some(
        basis
            .into_iter()
            .filter(|p| p.degree_in(&w) == 0)
            .collect(),
    )
}
