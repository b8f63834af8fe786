//! Difference ground fields: a coefficient field together with an
//! endomorphism σ, plus small finite-field extensions GF(p^m) used when
//! enumerating rational points under a Frobenius power.

use crate::scalar::{FieldKind, Scalar, UPoly};

/// The σ-action on the ground field.
#[derive(Clone, Debug, PartialEq)]
pub enum SigmaRule {
    /// σ = id.
    Identity,
    /// σ(a) = a^(p^e) on a field of characteristic p.
    Frobenius { e: u32 },
    /// t -> t + delta on rational functions.
    TShift { delta: i64 },
    /// t -> q·t on rational functions.
    TScale { q: Scalar },
}

/// A concrete ground field with its difference operator.
#[derive(Clone, Debug, PartialEq)]
pub struct DiffGroundField {
    pub kind: FieldKind,
    pub sigma: SigmaRule,
}

impl DiffGroundField {
    pub fn rational_identity() -> DiffGroundField {
        DiffGroundField { kind: FieldKind::Q, sigma: SigmaRule::Identity }
    }

    pub fn rational_functions_shift(delta: i64) -> DiffGroundField {
        DiffGroundField { kind: FieldKind::rat_fun_q(), sigma: SigmaRule::TShift { delta } }
    }

    pub fn prime_field_frobenius(p: u64, e: u32) -> DiffGroundField {
        DiffGroundField { kind: FieldKind::Fp(p), sigma: SigmaRule::Frobenius { e } }
    }

    pub fn apply_sigma(&self, a: &Scalar) -> Scalar {
        match &self.sigma {
            SigmaRule::Identity => a.clone(),
            SigmaRule::Frobenius { e } => {
                let p = self.kind.characteristic();
                assert!(p > 0, "Frobenius needs positive characteristic");
                let mut out = a.clone();
                for _ in 0..*e {
                    out = frob_once(&out, p);
                }
                out
            }
            SigmaRule::TShift { delta } => a.shift_t(*delta),
            SigmaRule::TScale { q } => a.scale_t(q),
        }
    }

    /// σ an automorphism? All supported rules are invertible except
    /// Frobenius on an infinite-degree setting, which cannot occur here.
    pub fn invertible(&self) -> bool {
        match &self.sigma {
            SigmaRule::TScale { q } => !q.is_zero(),
            _ => true,
        }
    }

    pub fn apply_sigma_inv(&self, a: &Scalar) -> Option<Scalar> {
        match &self.sigma {
            SigmaRule::Identity => Some(a.clone()),
            SigmaRule::TShift { delta } => Some(a.shift_t(-delta)),
            SigmaRule::TScale { q } => {
                if q.is_zero() {
                    None
                } else {
                    Some(a.scale_t(&q.inv()))
                }
            }
            SigmaRule::Frobenius { e } => {
                // on F_p itself Frobenius x -> x^p is the identity;
                // x -> x^{p^e} likewise
                let _ = e;
                match self.kind {
                    FieldKind::Fp(_) => Some(a.clone()),
                    _ => None,
                }
            }
        }
    }
}

fn frob_once(a: &Scalar, p: u64) -> Scalar {
    match a {
        Scalar::Fp { .. } => a.clone(), // x^p = x on F_p
        _ => {
            let mut out = Scalar::one(&a.field());
            for _ in 0..p {
                out = out.mul(a);
            }
            out
        }
    }
}

/// GF(p^m) as F_p[y]/(irr), elements as coefficient vectors of length m
/// (ascending). Used for point enumeration under Frobenius.
#[derive(Clone, Debug, PartialEq)]
pub struct Gf {
    pub p: u64,
    pub m: u32,
    /// monic irreducible modulus, coefficients ascending, length m+1
    pub modulus: Vec<u64>,
}

pub type GfElem = Vec<u64>;

impl Gf {
    /// Construct GF(p^m) by searching for a monic irreducible of degree m.
    pub fn new(p: u64, m: u32) -> Gf {
        assert!(m >= 1 && p >= 2);
        if m == 1 {
            return Gf { p, m, modulus: vec![0, 1] };
        }
        // enumerate monic polynomials of degree m, test irreducibility by
        // trial division against all monic polys of degree <= m/2
        let total = p.pow(m);
        for code in 0..total {
            let mut modulus = Vec::with_capacity(m as usize + 1);
            let mut c = code;
            for _ in 0..m {
                modulus.push(c % p);
                c /= p;
            }
            modulus.push(1);
            if poly_irreducible(p, &modulus) {
                return Gf { p, m, modulus };
            }
        }
        panic!("no irreducible polynomial found (impossible)");
    }

    pub fn zero(&self) -> GfElem {
        vec![0; self.m as usize]
    }

    pub fn one(&self) -> GfElem {
        let mut e = self.zero();
        e[0] = 1;
        e
    }

    pub fn from_u64(&self, n: u64) -> GfElem {
        let mut e = self.zero();
        e[0] = n % self.p;
        e
    }

    /// All q = p^m elements, in a fixed enumeration order.
    pub fn elements(&self) -> Vec<GfElem> {
        let q = self.p.pow(self.m);
        (0..q)
            .map(|code| {
                let mut e = self.zero();
                let mut c = code;
                for i in 0..self.m as usize {
                    e[i] = c % self.p;
                    c /= self.p;
                }
                e
            })
            .collect()
    }

    pub fn add(&self, a: &GfElem, b: &GfElem) -> GfElem {
        a.iter().zip(b).map(|(x, y)| (x + y) % self.p).collect()
    }

    pub fn neg(&self, a: &GfElem) -> GfElem {
        a.iter().map(|&x| (self.p - x) % self.p).collect()
    }

    pub fn sub(&self, a: &GfElem, b: &GfElem) -> GfElem {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &GfElem, b: &GfElem) -> GfElem {
        let m = self.m as usize;
        let mut prod = vec![0u64; 2 * m];
        for i in 0..m {
            if a[i] == 0 {
                continue;
            }
            for j in 0..m {
                prod[i + j] = (prod[i + j] + (a[i] as u128 * b[j] as u128 % self.p as u128) as u64)
                    % self.p;
            }
        }
        // reduce: y^m = -(lower modulus terms)
        for k in (m..2 * m).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for j in 0..m {
                let sub = (c as u128 * self.modulus[j] as u128 % self.p as u128) as u64;
                prod[k - m + j] = (prod[k - m + j] + self.p - sub) % self.p;
            }
        }
        prod.truncate(m);
        prod
    }

    pub fn pow(&self, a: &GfElem, mut e: u64) -> GfElem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn is_zero(&self, a: &GfElem) -> bool {
        a.iter().all(|&x| x == 0)
    }

    /// q-power Frobenius x -> x^(p^e).
    pub fn frobenius(&self, a: &GfElem, e: u32) -> GfElem {
        self.pow(a, self.p.pow(e))
    }
}

fn poly_mod_mul(p: u64, a: &[u64], b: &[u64], modulus: &[u64]) -> Vec<u64> {
    let m = modulus.len() - 1;
    let mut prod = vec![0u64; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + (x as u128 * y as u128 % p as u128) as u64) % p;
        }
    }
    for k in (m..prod.len()).rev() {
        let c = prod[k];
        if c == 0 {
            continue;
        }
        prod[k] = 0;
        for j in 0..m {
            let sub = (c as u128 * modulus[j] as u128 % p as u128) as u64;
            prod[k - m + j] = (prod[k - m + j] + p - sub) % p;
        }
    }
    prod.truncate(m);
    while prod.len() < m {
        prod.push(0);
    }
    prod
}

/// Irreducibility over F_p via the x^(p^d) criterion: f (monic, deg m) is
/// irreducible iff x^(p^m) ≡ x mod f and gcd(x^(p^(m/r)) − x, f) = 1 for
/// every prime r | m.
fn poly_irreducible(p: u64, f: &[u64]) -> bool {
    let m = (f.len() - 1) as u32;
    let x = {
        let mut v = vec![0u64; f.len() - 1];
        if v.len() > 1 {
            v[1] = 1;
        } else {
            // deg 1 modulus: x reduces to -c0
            v[0] = (p - f[0] % p) % p;
        }
        v
    };
    let xq = |e: u32| -> Vec<u64> {
        // x^(p^e) mod f by repeated p-th powering
        let mut cur = x.clone();
        for _ in 0..e {
            let mut acc = vec![0u64; f.len() - 1];
            acc[0] = 1;
            let mut base = cur.clone();
            let mut k = p;
            while k > 0 {
                if k & 1 == 1 {
                    acc = poly_mod_mul(p, &acc, &base, f);
                }
                base = poly_mod_mul(p, &base, &base, f);
                k >>= 1;
            }
            cur = acc;
        }
        cur
    };
    if xq(m) != x {
        return false;
    }
    let mut mm = m;
    let mut primes = Vec::new();
    let mut d = 2;
    while d * d <= mm {
        if mm % d == 0 {
            primes.push(d);
            while mm % d == 0 {
                mm /= d;
            }
        }
        d += 1;
    }
    if mm > 1 {
        primes.push(mm);
    }
    for r in primes {
        let g = xq(m / r);
        // gcd(g - x, f) must be 1
        let mut diff: Vec<u64> = g
            .iter()
            .zip(x.iter().chain(std::iter::repeat(&0)))
            .map(|(a, b)| (a + p - b % p) % p)
            .collect();
        while diff.last() == Some(&0) {
            diff.pop();
        }
        if diff.is_empty() {
            return false;
        }
        if poly_gcd_deg(p, f, &diff) > 0 {
            return false;
        }
    }
    true
}

fn poly_gcd_deg(p: u64, a: &[u64], b: &[u64]) -> usize {
    let mut a: Vec<u64> = a.to_vec();
    let mut b: Vec<u64> = b.to_vec();
    let trim = |v: &mut Vec<u64>| {
        while v.last() == Some(&0) {
            v.pop();
        }
    };
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        // a mod b
        let lead_inv = mod_inv(p, *b.last().unwrap());
        while a.len() >= b.len() && !a.is_empty() {
            let shift = a.len() - b.len();
            let c = (*a.last().unwrap() as u128 * lead_inv as u128 % p as u128) as u64;
            for (i, &bc) in b.iter().enumerate() {
                let sub = (c as u128 * bc as u128 % p as u128) as u64;
                a[shift + i] = (a[shift + i] + p - sub) % p;
            }
            trim(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

fn mod_inv(p: u64, a: u64) -> u64 {
    let mut acc = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = (acc as u128 * base as u128 % p as u128) as u64;
        }
        base = (base as u128 * base as u128 % p as u128) as u64;
        e >>= 1;
    }
    acc
}

/// σ-fixed elements a of GF(p^m) with σ = p^e-Frobenius: a^(p^e) = a.
pub fn frobenius_fixed_elements(gf: &Gf, e: u32) -> Vec<GfElem> {
    gf.elements()
        .into_iter()
        .filter(|a| gf.frobenius(a, e) == *a)
        .collect()
}

/// Evaluate a UPoly with Fp coefficients at a GF(p^m) element.
pub fn upoly_eval_gf(gf: &Gf, poly: &UPoly, x: &GfElem) -> GfElem {
    let mut acc = gf.zero();
    for c in poly.coeffs.iter().rev() {
        let cv = match c {
            Scalar::Fp { val, .. } => *val,
            _ => panic!("expected prime-field coefficients"),
        };
        acc = gf.add(&gf.mul(&acc, x), &gf.from_u64(cv));
    }
    acc
}
