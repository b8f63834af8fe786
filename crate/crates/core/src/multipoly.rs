//! Sparse multivariate polynomials over a [`Scalar`] field with graded
//! lexicographic and block elimination term orders.

use crate::scalar::{FieldKind, Scalar};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

/// A polynomial variable. `key` orders variables: first by generator index,
/// then by shift, so `x@1 > x@0` and generator 1's variables beat generator 0's.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Var {
    pub name: String,
    pub key: (u32, u32),
}

impl PartialOrd for Var {
    fn partial_cmp(&self, other: &Var) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Var {
    fn cmp(&self, other: &Var) -> Ordering {
        self.key.cmp(&other.key).then_with(|| self.name.cmp(&other.name))
    }
}

impl Var {
    pub fn new(name: &str, gen: u32, shift: u32) -> Var {
        Var { name: name.to_string(), key: (gen, shift) }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)
    }
}

/// Monomial order: graded lex on `Var::key`, or a block order that
/// eliminates the first `k` variables (largest keys first).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TermOrder {
    GrLex,
    /// Block order eliminating the `k` largest variables: compare grlex on
    /// the eliminated block, then grlex on the rest.
    Elim(usize),
}

fn grlex_cmp(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    match da.cmp(&db) {
        Ordering::Equal => {
            // vars are stored ascending by key; lex compares the largest first
            for (x, y) in a.iter().rev().zip(b.iter().rev()) {
                match x.cmp(y) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            Ordering::Equal
        }
        o => o,
    }
}

fn order_cmp(order: TermOrder, nvars: usize, a: &[u32], b: &[u32]) -> Ordering {
    match order {
        TermOrder::GrLex => grlex_cmp(a, b),
        TermOrder::Elim(k) => {
            let split = nvars - k.min(nvars);
            match grlex_cmp(&a[split..], &b[split..]) {
                Ordering::Equal => grlex_cmp(&a[..split], &b[..split]),
                o => o,
            }
        }
    }
}

/// Sparse multivariate polynomial. `vars` sorted ascending by `key`;
/// exponent vectors align with `vars`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MPoly {
    pub field: FieldKind,
    pub vars: Vec<Var>,
    pub terms: BTreeMap<Vec<u32>, Scalar>,
}

impl MPoly {
    pub fn zero(field: &FieldKind) -> MPoly {
        MPoly { field: field.clone(), vars: vec![], terms: BTreeMap::new() }
    }

    pub fn constant(c: Scalar) -> MPoly {
        let field = c.field();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(vec![], c);
        }
        MPoly { field, vars: vec![], terms }
    }

    pub fn one(field: &FieldKind) -> MPoly {
        MPoly::constant(Scalar::one(field))
    }

    pub fn var(field: &FieldKind, v: Var) -> MPoly {
        let mut terms = BTreeMap::new();
        terms.insert(vec![1], Scalar::one(field));
        MPoly { field: field.clone(), vars: vec![v], terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn constant_value(&self) -> Option<Scalar> {
        if self.is_zero() {
            return Some(Scalar::zero(&self.field));
        }
        if self.is_constant() {
            return self.terms.values().next().cloned();
        }
        None
    }

    pub fn total_degree(&self) -> u64 {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&x| x as u64).sum())
            .max()
            .unwrap_or(0)
    }

    pub fn degree_in(&self, v: &Var) -> u32 {
        match self.vars.iter().position(|w| w == v) {
            Some(i) => self.terms.keys().map(|e| e[i]).max().unwrap_or(0),
            None => 0,
        }
    }

    fn normalize(mut self) -> MPoly {
        self.terms.retain(|_, c| !c.is_zero());
        // drop variables not actually used
        let used: Vec<bool> = (0..self.vars.len())
            .map(|i| self.terms.keys().any(|e| e[i] != 0))
            .collect();
        if used.iter().all(|&u| u) {
            return self;
        }
        let vars: Vec<Var> = self
            .vars
            .iter()
            .zip(&used)
            .filter(|(_, &u)| u)
            .map(|(v, _)| v.clone())
            .collect();
        let terms = self
            .terms
            .into_iter()
            .map(|(e, c)| {
                let e2: Vec<u32> = e
                    .into_iter()
                    .zip(&used)
                    .filter(|(_, &u)| u)
                    .map(|(x, _)| x)
                    .collect();
                (e2, c)
            })
            .collect();
        MPoly { field: self.field, vars, terms }
    }

    /// Re-express both polynomials over the union of their variable sets.
    pub fn align(a: &MPoly, b: &MPoly) -> (MPoly, MPoly) {
        assert_eq!(a.field, b.field, "mixed coefficient fields");
        let mut vars: Vec<Var> = a.vars.clone();
        for v in &b.vars {
            if !vars.contains(v) {
                vars.push(v.clone());
            }
        }
        vars.sort();
        (a.embed(&vars), b.embed(&vars))
    }

    /// Re-express over a superset of the current variables (sorted ascending).
    pub fn embed(&self, vars: &[Var]) -> MPoly {
        let idx: Vec<usize> = self
            .vars
            .iter()
            .map(|v| vars.iter().position(|w| w == v).expect("embed: missing variable"))
            .collect();
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut e2 = vec![0u32; vars.len()];
                for (j, &x) in e.iter().enumerate() {
                    e2[idx[j]] = x;
                }
                (e2, c.clone())
            })
            .collect();
        MPoly { field: self.field.clone(), vars: vars.to_vec(), terms }
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        let (mut a, b) = MPoly::align(self, other);
        for (e, c) in b.terms {
            let entry = a.terms.entry(e).or_insert_with(|| Scalar::zero(&a.field));
            *entry = entry.add(&c);
        }
        a.normalize()
    }

    pub fn neg(&self) -> MPoly {
        MPoly {
            field: self.field.clone(),
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        let (a, b) = MPoly::align(self, other);
        let mut terms: BTreeMap<Vec<u32>, Scalar> = BTreeMap::new();
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                let prod = ca.mul(cb);
                let entry = terms.entry(e).or_insert_with(|| Scalar::zero(&a.field));
                *entry = entry.add(&prod);
            }
        }
        MPoly { field: a.field, vars: a.vars, terms }.normalize()
    }

    pub fn scale(&self, c: &Scalar) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(&self.field);
        }
        MPoly {
            field: self.field.clone(),
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, a)| (e.clone(), a.mul(c))).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MPoly {
        let mut acc = MPoly::one(&self.field);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Leading term under the order: (exponent, coefficient).
    pub fn leading_term(&self, order: TermOrder) -> Option<(Vec<u32>, Scalar)> {
        let n = self.vars.len();
        self.terms
            .iter()
            .max_by(|(a, _), (b, _)| order_cmp(order, n, a, b))
            .map(|(e, c)| (e.clone(), c.clone()))
    }

    /// Multi-divisor division: returns (quotients, remainder) with
    /// self = sum q_i * divisors_i + r and no term of r divisible by any
    /// divisor's leading monomial.
    pub fn div_mod(&self, divisors: &[MPoly], order: TermOrder) -> (Vec<MPoly>, MPoly) {
        let mut vars: Vec<Var> = self.vars.clone();
        for d in divisors {
            for v in &d.vars {
                if !vars.contains(v) {
                    vars.push(v.clone());
                }
            }
        }
        vars.sort();
        let divs: Vec<MPoly> = divisors.iter().map(|d| d.embed(&vars)).collect();
        let lts: Vec<(Vec<u32>, Scalar)> = divs
            .iter()
            .map(|d| d.leading_term(order).expect("division by zero polynomial"))
            .collect();
        let mut p = self.embed(&vars);
        let mut quots = vec![MPoly::zero(&self.field); divisors.len()];
        let mut rem = MPoly::zero(&self.field);
        loop {
            // arithmetic re-canonicalizes and may drop unused variables;
            // keep the working polynomial aligned with the divisor frame
            p = p.embed(&vars);
            let Some((e, c)) = p.leading_term(order) else { break };
            let mut reduced = false;
            for (i, (le, lc)) in lts.iter().enumerate() {
                if e.iter().zip(le).all(|(a, b)| a >= b) {
                    let qe: Vec<u32> = e.iter().zip(le).map(|(a, b)| a - b).collect();
                    let qc = c.div(lc);
                    let mono = MPoly {
                        field: self.field.clone(),
                        vars: vars.clone(),
                        terms: [(qe, qc)].into_iter().collect(),
                    };
                    p = p.sub(&mono.mul(&divs[i]));
                    quots[i] = quots[i].add(&mono);
                    reduced = true;
                    break;
                }
            }
            if !reduced {
                let mono = MPoly {
                    field: self.field.clone(),
                    vars: vars.clone(),
                    terms: [(e.clone(), c)].into_iter().collect(),
                };
                rem = rem.add(&mono);
                p = p.sub(&mono);
            }
        }
        (
            quots.into_iter().map(|q| q.normalize()).collect(),
            rem.normalize(),
        )
    }

    /// Exact division; panics if the division is not exact.
    pub fn exact_div(&self, other: &MPoly) -> MPoly {
        let (q, r) = self.div_mod(std::slice::from_ref(other), TermOrder::GrLex);
        assert!(r.is_zero(), "inexact division");
        q.into_iter().next().unwrap()
    }

    /// Substitute `v -> image` (a polynomial).
    pub fn substitute(&self, v: &Var, image: &MPoly) -> MPoly {
        let Some(i) = self.vars.iter().position(|w| w == v) else {
            return self.clone();
        };
        let mut acc = MPoly::zero(&self.field);
        for (e, c) in &self.terms {
            let mut rest = e.clone();
            let exp = rest[i];
            rest[i] = 0;
            let mono = MPoly {
                field: self.field.clone(),
                vars: self.vars.clone(),
                terms: [(rest, c.clone())].into_iter().collect(),
            };
            acc = acc.add(&mono.mul(&image.pow(exp)));
        }
        acc.normalize()
    }

    /// Rename each variable via `f`; the map must be injective on used vars.
    pub fn rename_vars(&self, f: impl Fn(&Var) -> Var) -> MPoly {
        let new_vars: Vec<Var> = self.vars.iter().map(&f).collect();
        let mut order: Vec<usize> = (0..new_vars.len()).collect();
        order.sort_by(|&a, &b| new_vars[a].cmp(&new_vars[b]));
        let vars: Vec<Var> = order.iter().map(|&i| new_vars[i].clone()).collect();
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let e2: Vec<u32> = order.iter().map(|&i| e[i]).collect();
                (e2, c.clone())
            })
            .collect();
        MPoly { field: self.field.clone(), vars, terms }
    }

    /// Map every coefficient through `f`.
    pub fn map_coeffs(&self, f: impl Fn(&Scalar) -> Scalar) -> MPoly {
        MPoly {
            field: self.field.clone(),
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), f(c))).collect(),
        }
        .normalize()
    }

    /// Evaluate at a full assignment of the used variables.
    pub fn evaluate(&self, assign: &dyn Fn(&Var) -> Scalar) -> Scalar {
        let vals: Vec<Scalar> = self.vars.iter().map(|v| assign(v)).collect();
        let mut acc = Scalar::zero(&self.field);
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (i, &exp) in e.iter().enumerate() {
                if exp > 0 {
                    term = term.mul(&vals[i].pow(exp));
                }
            }
            acc = acc.add(&term);
        }
        acc
    }

    /// View as a univariate polynomial in `v` with MPoly coefficients
    /// (ascending degree, length = deg+1; empty if self is zero).
    pub fn coeffs_in(&self, v: &Var) -> Vec<MPoly> {
        if self.is_zero() {
            return vec![];
        }
        let d = self.degree_in(v) as usize;
        let mut out = vec![MPoly::zero(&self.field); d + 1];
        let pos = self.vars.iter().position(|w| w == v);
        for (e, c) in &self.terms {
            let (deg, rest) = match pos {
                Some(i) => {
                    let mut r = e.clone();
                    let dd = r[i] as usize;
                    r[i] = 0;
                    (dd, r)
                }
                None => (0, e.clone()),
            };
            let mono = MPoly {
                field: self.field.clone(),
                vars: self.vars.clone(),
                terms: [(rest, c.clone())].into_iter().collect(),
            };
            out[deg] = out[deg].add(&mono);
        }
        out.into_iter().map(|p| p.normalize()).collect()
    }

    /// Formal partial derivative with respect to `v`.
    pub fn derivative(&self, v: &Var) -> MPoly {
        let Some(i) = self.vars.iter().position(|w| w == v) else {
            return MPoly::zero(&self.field);
        };
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| e[i] > 0)
            .map(|(e, c)| {
                let mut e2 = e.clone();
                let k = e2[i];
                e2[i] -= 1;
                (e2, c.mul(&Scalar::from_i64(&self.field, k as i64)))
            })
            .collect();
        MPoly { field: self.field.clone(), vars: self.vars.clone(), terms }.normalize()
    }

    /// Sylvester resultant of self and other in the variable `v`.
    pub fn resultant(&self, other: &MPoly, v: &Var) -> MPoly {
        let a = self.coeffs_in(v);
        let b = other.coeffs_in(v);
        let m = a.len().saturating_sub(1);
        let n = b.len().saturating_sub(1);
        if a.is_empty() || b.is_empty() {
            return MPoly::zero(&self.field);
        }
        if m == 0 && n == 0 {
            return MPoly::one(&self.field);
        }
        if m == 0 {
            return a[0].pow(n as u32);
        }
        if n == 0 {
            return b[0].pow(m as u32);
        }
        let size = m + n;
        let mut mat = vec![vec![MPoly::zero(&self.field); size]; size];
        for row in 0..n {
            for (j, c) in a.iter().enumerate() {
                mat[row][row + (m - j)] = c.clone();
            }
        }
        for row in 0..m {
            for (j, c) in b.iter().enumerate() {
                mat[n + row][row + (n - j)] = c.clone();
            }
        }
        mpoly_det(&mat, &self.field)
    }
}

/// Determinant by cofactor expansion with Bareiss-style exact division is
/// overkill here; sizes stay small, so expand along the sparsest column.
fn mpoly_det(mat: &[Vec<MPoly>], field: &FieldKind) -> MPoly {
    let n = mat.len();
    if n == 0 {
        return MPoly::one(field);
    }
    if n == 1 {
        return mat[0][0].clone();
    }
    // pick column with most zeros
    let col = (0..n)
        .max_by_key(|&j| (0..n).filter(|&i| mat[i][j].is_zero()).count())
        .unwrap();
    let mut acc = MPoly::zero(field);
    for i in 0..n {
        if mat[i][col].is_zero() {
            continue;
        }
        let minor: Vec<Vec<MPoly>> = (0..n)
            .filter(|&r| r != i)
            .map(|r| {
                (0..n)
                    .filter(|&c| c != col)
                    .map(|c| mat[r][c].clone())
                    .collect()
            })
            .collect();
        let cof = mat[i][col].mul(&mpoly_det(&minor, field));
        if (i + col) % 2 == 0 {
            acc = acc.add(&cof);
        } else {
            acc = acc.sub(&cof);
        }
    }
    acc
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let n = self.vars.len();
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| order_cmp(TermOrder::GrLex, n, b, a));
        let mut first = true;
        for (e, c) in terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let is_const = e.iter().all(|&x| x == 0);
            if is_const || !c.is_one() {
                write!(f, "{}", c)?;
                if !is_const {
                    write!(f, "*")?;
                }
            }
            let mut first_var = true;
            for (i, &exp) in e.iter().enumerate() {
                if exp == 0 {
                    continue;
                }
                if !first_var {
                    write!(f, "*")?;
                }
                first_var = false;
                if exp == 1 {
                    write!(f, "{}", self.vars[i])?;
                } else {
                    write!(f, "{}^{}", self.vars[i], exp)?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Var {
        Var::new("x@0", 0, 0)
    }
    fn y() -> Var {
        Var::new("y@0", 1, 0)
    }

    fn qp(n: i64) -> MPoly {
        MPoly::constant(Scalar::from_i64(&FieldKind::Q, n))
    }

    #[test]
    fn arith_and_align() {
        let k = FieldKind::Q;
        let px = MPoly::var(&k, x());
        let py = MPoly::var(&k, y());
        let s = px.add(&py);
        let p = s.mul(&s); // x^2 + 2xy + y^2
        assert_eq!(p.total_degree(), 2);
        assert_eq!(p.terms.len(), 3);
        let back = p.sub(&px.mul(&px)).sub(&py.mul(&py));
        assert_eq!(back, px.mul(&py).scale(&Scalar::from_i64(&k, 2)));
    }

    #[test]
    fn division_and_exact_div() {
        let k = FieldKind::Q;
        let px = MPoly::var(&k, x());
        let py = MPoly::var(&k, y());
        let prod = px.add(&py).mul(&px.sub(&py)); // x^2 - y^2
        assert_eq!(prod.exact_div(&px.add(&py)), px.sub(&py));
        let (_, r) = prod.add(&qp(1)).div_mod(&[px.add(&py)], TermOrder::GrLex);
        assert_eq!(r, qp(1));
    }

    #[test]
    fn grlex_leading_term() {
        let k = FieldKind::Q;
        let px = MPoly::var(&k, x());
        let py = MPoly::var(&k, y());
        // y has higher key than x so y^2 beats x^2 beats xy? no: grlex,
        // same total degree, lex on largest var: y^2 > x*y > x^2
        let p = px.mul(&px).add(&px.mul(&py)).add(&py.mul(&py));
        let (e, _) = p.leading_term(TermOrder::GrLex).unwrap();
        assert_eq!(e, vec![0, 2]);
    }

    #[test]
    fn elim_order_prefers_eliminated_block() {
        let k = FieldKind::Q;
        let px = MPoly::var(&k, x());
        let py = MPoly::var(&k, y());
        // eliminate y (the largest var): y beats x^5 under Elim(1)
        let p = px.pow(5).add(&py);
        let (e, _) = p.leading_term(TermOrder::Elim(1)).unwrap();
        assert_eq!(e, vec![0, 1]);
    }

    #[test]
    fn resultant_of_common_root() {
        let k = FieldKind::Q;
        let px = MPoly::var(&k, x());
        let py = MPoly::var(&k, y());
        // res_x(x - y, x^2 - y^2) = y^2 - y^2 = 0 (common root x = y)
        let r = px.sub(&py).resultant(&px.mul(&px).sub(&py.mul(&py)), &x());
        assert!(r.is_zero());
        // res_x(x - y, x^2 - 2) = y^2 - 2
        let r2 = px.sub(&py).resultant(&px.mul(&px).sub(&qp(2)), &x());
        assert_eq!(r2, py.mul(&py).sub(&qp(2)));
    }

    #[test]
    fn substitution() {
        let k = FieldKind::Q;
        let px = MPoly::var(&k, x());
        let py = MPoly::var(&k, y());
        let p = px.mul(&px).sub(&qp(1));
        let q = p.substitute(&x(), &py.add(&qp(1))); // (y+1)^2 - 1 = y^2 + 2y
        assert_eq!(q, py.mul(&py).add(&py.scale(&Scalar::from_i64(&k, 2))));
    }
}
