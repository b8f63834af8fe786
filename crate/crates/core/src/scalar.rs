//! Exact coefficient arithmetic: rationals, prime fields, and univariate
//! rational functions in the ground variable `t`.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use std::fmt;

/// Descriptor of a coefficient field.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum FieldKind {
    /// The rationals.
    Q,
    /// Prime field of the given (prime) order.
    Fp(u64),
    /// Rational functions in `t` over the base (Q or Fp).
    RatFun(Box<FieldKind>),
}

impl FieldKind {
    pub fn rat_fun_q() -> FieldKind {
        FieldKind::RatFun(Box::new(FieldKind::Q))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldKind::Q => 0,
            FieldKind::Fp(p) => *p,
            FieldKind::RatFun(b) => b.characteristic(),
        }
    }
}

impl fmt::Display for FieldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldKind::Q => write!(f, "Q"),
            FieldKind::Fp(p) => write!(f, "F{}", p),
            FieldKind::RatFun(b) => write!(f, "{}(t)", b),
        }
    }
}

fn fp_add(p: u64, a: u64, b: u64) -> u64 {
    ((a as u128 + b as u128) % p as u128) as u64
}

fn fp_mul(p: u64, a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn fp_pow(p: u64, mut a: u64, mut e: u64) -> u64 {
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = fp_mul(p, acc, a);
        }
        a = fp_mul(p, a, a);
        e >>= 1;
    }
    acc
}

fn fp_inv(p: u64, a: u64) -> u64 {
    assert!(a % p != 0, "division by zero in F{}", p);
    fp_pow(p, a % p, p - 2)
}

/// Dense univariate polynomial over Q or Fp, lowest degree first,
/// no trailing zeros.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct UPoly {
    pub base: FieldKind,
    pub coeffs: Vec<Scalar>,
}

impl UPoly {
    pub fn zero(base: &FieldKind) -> UPoly {
        UPoly { base: base.clone(), coeffs: vec![] }
    }

    pub fn constant(c: Scalar) -> UPoly {
        let base = c.field();
        let mut p = UPoly { base, coeffs: vec![c] };
        p.trim();
        p
    }

    pub fn one(base: &FieldKind) -> UPoly {
        UPoly::constant(Scalar::one(base))
    }

    /// The variable `t`.
    pub fn var(base: &FieldKind) -> UPoly {
        UPoly { base: base.clone(), coeffs: vec![Scalar::zero(base), Scalar::one(base)] }
    }

    pub fn from_coeffs(base: &FieldKind, coeffs: Vec<Scalar>) -> UPoly {
        let mut p = UPoly { base: base.clone(), coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while let Some(c) = self.coeffs.last() {
            if c.is_zero() {
                self.coeffs.pop();
            } else {
                break;
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn leading(&self) -> Scalar {
        self.coeffs.last().cloned().unwrap_or_else(|| Scalar::zero(&self.base))
    }

    pub fn add(&self, other: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).cloned().unwrap_or_else(|| Scalar::zero(&self.base));
            let b = other.coeffs.get(i).cloned().unwrap_or_else(|| Scalar::zero(&self.base));
            coeffs.push(a.add(&b));
        }
        UPoly::from_coeffs(&self.base, coeffs)
    }

    pub fn neg(&self) -> UPoly {
        UPoly { base: self.base.clone(), coeffs: self.coeffs.iter().map(|c| c.neg()).collect() }
    }

    pub fn sub(&self, other: &UPoly) -> UPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &UPoly) -> UPoly {
        if self.is_zero() || other.is_zero() {
            return UPoly::zero(&self.base);
        }
        let mut coeffs = vec![Scalar::zero(&self.base); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
            }
        }
        UPoly::from_coeffs(&self.base, coeffs)
    }

    pub fn scale(&self, c: &Scalar) -> UPoly {
        UPoly::from_coeffs(&self.base, self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    /// Euclidean division, returns (quotient, remainder).
    pub fn div_rem(&self, other: &UPoly) -> (UPoly, UPoly) {
        assert!(!other.is_zero(), "division by zero polynomial");
        let mut rem = self.clone();
        let mut quo = UPoly::zero(&self.base);
        let dlead_inv = other.leading().inv();
        while !rem.is_zero() && rem.degree() >= other.degree() {
            let shift = (rem.degree() - other.degree()) as usize;
            let c = rem.leading().mul(&dlead_inv);
            let mut q = vec![Scalar::zero(&self.base); shift + 1];
            q[shift] = c;
            let q = UPoly::from_coeffs(&self.base, q);
            rem = rem.sub(&q.mul(other));
            quo = quo.add(&q);
        }
        (quo, rem)
    }

    pub fn gcd(&self, other: &UPoly) -> UPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    pub fn monic(&self) -> UPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.leading().inv())
    }

    pub fn derivative(&self) -> UPoly {
        if self.coeffs.len() <= 1 {
            return UPoly::zero(&self.base);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.mul(&Scalar::from_i64(&self.base, i as i64)))
            .collect();
        UPoly::from_coeffs(&self.base, coeffs)
    }

    /// Substitute `t -> image` where `image` is another polynomial.
    pub fn compose(&self, image: &UPoly) -> UPoly {
        let mut acc = UPoly::zero(&self.base);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(image).add(&UPoly::constant(c.clone()));
        }
        acc
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = Scalar::zero(&self.base);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    /// Exact polynomial square root, if one exists.
    pub fn sqrt(&self) -> Option<UPoly> {
        if self.is_zero() {
            return Some(self.clone());
        }
        if self.degree() % 2 != 0 {
            return None;
        }
        let lead_sqrt = self.leading().sqrt()?;
        let half = (self.degree() / 2) as usize;
        // Coefficient matching from the top.
        let mut root = vec![Scalar::zero(&self.base); half + 1];
        root[half] = lead_sqrt;
        for k in (0..half).rev() {
            // coefficient of t^(half+k) in root^2 is
            // 2*root[half]*root[k] + sum_{i+j=half+k, k<i,j<half} root[i]root[j]
            let mut sum = Scalar::zero(&self.base);
            let target = half + k;
            for i in (k + 1)..half {
                let j = target as i64 - i as i64;
                if j > i as i64 || j < 0 {
                    continue;
                }
                let term = root[i].mul(&root[j as usize]);
                sum = if (j as usize) == i { sum.add(&term) } else { sum.add(&term).add(&term) };
            }
            let want = self
                .coeffs
                .get(target)
                .cloned()
                .unwrap_or_else(|| Scalar::zero(&self.base));
            let two = Scalar::from_i64(&self.base, 2);
            root[k] = want.sub(&sum).mul(&two.mul(&root[half]).inv());
        }
        let cand = UPoly::from_coeffs(&self.base, root);
        if cand.mul(&cand) == *self {
            Some(cand)
        } else {
            None
        }
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{}", c)?,
                1 => write!(f, "{}*t", c)?,
                _ => write!(f, "{}*t^{}", c, i)?,
            }
        }
        Ok(())
    }
}

/// Reduced fraction of univariate polynomials; denominator monic and nonzero.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct RatFun {
    pub num: UPoly,
    pub den: UPoly,
}

impl RatFun {
    pub fn new(num: UPoly, den: UPoly) -> RatFun {
        assert!(!den.is_zero(), "rational function with zero denominator");
        let mut r = RatFun { num, den };
        r.reduce();
        r
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den = UPoly::one(&self.den.base);
            return;
        }
        let g = self.num.gcd(&self.den);
        if g.degree() > 0 {
            self.num = self.num.div_rem(&g).0;
            self.den = self.den.div_rem(&g).0;
        }
        let lead_inv = self.den.leading().inv();
        self.num = self.num.scale(&lead_inv);
        self.den = self.den.scale(&lead_inv);
    }
}

/// An element of one of the supported coefficient fields.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub enum Scalar {
    Rat(BigRational),
    Fp { p: u64, val: u64 },
    RatFun(Box<RatFun>),
}

impl Scalar {
    pub fn field(&self) -> FieldKind {
        match self {
            Scalar::Rat(_) => FieldKind::Q,
            Scalar::Fp { p, .. } => FieldKind::Fp(*p),
            Scalar::RatFun(r) => FieldKind::RatFun(Box::new(r.num.base.clone())),
        }
    }

    pub fn zero(kind: &FieldKind) -> Scalar {
        Scalar::from_i64(kind, 0)
    }

    pub fn one(kind: &FieldKind) -> Scalar {
        Scalar::from_i64(kind, 1)
    }

    pub fn from_i64(kind: &FieldKind, n: i64) -> Scalar {
        match kind {
            FieldKind::Q => Scalar::Rat(BigRational::from_integer(BigInt::from(n))),
            FieldKind::Fp(p) => {
                let v = n.rem_euclid(*p as i64) as u64;
                Scalar::Fp { p: *p, val: v }
            }
            FieldKind::RatFun(base) => {
                let num = UPoly::constant(Scalar::from_i64(base, n));
                Scalar::RatFun(Box::new(RatFun::new(num, UPoly::one(base))))
            }
        }
    }

    pub fn from_rational(kind: &FieldKind, num: i64, den: u64) -> Scalar {
        assert!(den != 0);
        let n = Scalar::from_i64(kind, num);
        let d = Scalar::from_i64(kind, den as i64);
        n.mul(&d.inv())
    }

    /// The ground variable `t` of a rational-function field.
    pub fn t_var(kind: &FieldKind) -> Scalar {
        match kind {
            FieldKind::RatFun(base) => {
                Scalar::RatFun(Box::new(RatFun::new(UPoly::var(base), UPoly::one(base))))
            }
            _ => panic!("t is only available in rational-function fields"),
        }
    }

    pub fn from_rat_fun(r: RatFun) -> Scalar {
        Scalar::RatFun(Box::new(r))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Fp { val, .. } => *val == 0,
            Scalar::RatFun(r) => r.num.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Fp { val, .. } => *val == 1,
            Scalar::RatFun(r) => r.den.degree() == 0 && r.num.degree() == 0 && r.num.coeffs[0].is_one(),
        }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Fp { p, val: a }, Scalar::Fp { p: q, val: b }) => {
                assert_eq!(p, q, "mixed prime fields");
                Scalar::Fp { p: *p, val: fp_add(*p, *a, *b) }
            }
            (Scalar::RatFun(a), Scalar::RatFun(b)) => {
                let num = a.num.mul(&b.den).add(&b.num.mul(&a.den));
                let den = a.den.mul(&b.den);
                Scalar::RatFun(Box::new(RatFun::new(num, den)))
            }
            _ => panic!("mixed scalar kinds in add: {:?} vs {:?}", self.field(), other.field()),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Fp { p, val } => Scalar::Fp { p: *p, val: if *val == 0 { 0 } else { p - val } },
            Scalar::RatFun(r) => {
                Scalar::RatFun(Box::new(RatFun { num: r.num.neg(), den: r.den.clone() }))
            }
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Fp { p, val: a }, Scalar::Fp { p: q, val: b }) => {
                assert_eq!(p, q, "mixed prime fields");
                Scalar::Fp { p: *p, val: fp_mul(*p, *a, *b) }
            }
            (Scalar::RatFun(a), Scalar::RatFun(b)) => {
                let num = a.num.mul(&b.num);
                let den = a.den.mul(&b.den);
                Scalar::RatFun(Box::new(RatFun::new(num, den)))
            }
            _ => panic!("mixed scalar kinds in mul: {:?} vs {:?}", self.field(), other.field()),
        }
    }

    pub fn inv(&self) -> Scalar {
        assert!(!self.is_zero(), "inverse of zero");
        match self {
            Scalar::Rat(a) => Scalar::Rat(a.recip()),
            Scalar::Fp { p, val } => Scalar::Fp { p: *p, val: fp_inv(*p, *val) },
            Scalar::RatFun(r) => {
                Scalar::RatFun(Box::new(RatFun::new(r.den.clone(), r.num.clone())))
            }
        }
    }

    pub fn div(&self, other: &Scalar) -> Scalar {
        self.mul(&other.inv())
    }

    pub fn pow(&self, e: u32) -> Scalar {
        let mut acc = Scalar::one(&self.field());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Exact square root, when one exists in the field.
    pub fn sqrt(&self) -> Option<Scalar> {
        match self {
            Scalar::Rat(a) => {
                if a.is_negative() {
                    return None;
                }
                let n = a.numer().sqrt();
                let d = a.denom().sqrt();
                if &(&n * &n) == a.numer() && &(&d * &d) == a.denom() {
                    Some(Scalar::Rat(BigRational::new(n, d)))
                } else {
                    None
                }
            }
            Scalar::Fp { p, val } => {
                if *val == 0 {
                    return Some(self.clone());
                }
                // brute force; fields here are small
                for r in 1..*p {
                    if fp_mul(*p, r, r) == *val {
                        return Some(Scalar::Fp { p: *p, val: r });
                    }
                }
                None
            }
            Scalar::RatFun(r) => {
                let num = r.num.sqrt()?;
                let den = r.den.sqrt()?;
                Some(Scalar::RatFun(Box::new(RatFun::new(num, den))))
            }
        }
    }

    /// t -> t + delta on rational functions; identity elsewhere.
    pub fn shift_t(&self, delta: i64) -> Scalar {
        match self {
            Scalar::RatFun(r) => {
                let base = &r.num.base;
                let image = UPoly::from_coeffs(
                    base,
                    vec![Scalar::from_i64(base, delta), Scalar::one(base)],
                );
                Scalar::RatFun(Box::new(RatFun::new(
                    r.num.compose(&image),
                    r.den.compose(&image),
                )))
            }
            _ => self.clone(),
        }
    }

    /// t -> q*t on rational functions; identity elsewhere.
    pub fn scale_t(&self, q: &Scalar) -> Scalar {
        match self {
            Scalar::RatFun(r) => {
                let base = &r.num.base;
                let qc = match q {
                    Scalar::RatFun(qq) => {
                        assert_eq!(qq.den.degree(), 0);
                        assert!(qq.num.degree() <= 0);
                        qq.num.coeffs.first().cloned().unwrap_or_else(|| Scalar::zero(base))
                    }
                    other => other.clone(),
                };
                let image = UPoly::from_coeffs(base, vec![Scalar::zero(base), qc]);
                Scalar::RatFun(Box::new(RatFun::new(
                    r.num.compose(&image),
                    r.den.compose(&image),
                )))
            }
            _ => self.clone(),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Fp { val, .. } => write!(f, "{}", val),
            Scalar::RatFun(r) => {
                if r.den.degree() == 0 {
                    write!(f, "({})", r.num)
                } else {
                    write!(f, "(({})/({}))", r.num, r.den)
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: u64) -> Scalar {
        Scalar::from_rational(&FieldKind::Q, n, d)
    }

    #[test]
    fn rational_basics() {
        assert_eq!(q(1, 2).add(&q(1, 3)), q(5, 6));
        assert_eq!(q(2, 4), q(1, 2));
        assert!(q(3, 7).mul(&q(3, 7).inv()).is_one());
    }

    #[test]
    fn prime_field_basics() {
        let k = FieldKind::Fp(5);
        let a = Scalar::from_i64(&k, 7);
        assert_eq!(a, Scalar::from_i64(&k, 2));
        assert!(a.mul(&a.inv()).is_one());
        assert_eq!(Scalar::from_i64(&k, 4).sqrt(), Some(Scalar::from_i64(&k, 2)));
        assert_eq!(Scalar::from_i64(&k, 2).sqrt(), None);
    }

    #[test]
    fn rat_fun_reduces() {
        let k = FieldKind::rat_fun_q();
        let t = Scalar::t_var(&k);
        let one = Scalar::one(&k);
        // (t^2 - 1)/(t - 1) = t + 1
        let num = t.mul(&t).sub(&one);
        let den = t.sub(&one);
        assert_eq!(num.div(&den), t.add(&one));
    }

    #[test]
    fn rat_fun_shift() {
        let k = FieldKind::rat_fun_q();
        let t = Scalar::t_var(&k);
        let shifted = t.shift_t(1);
        assert_eq!(shifted, t.add(&Scalar::one(&k)));
    }

    #[test]
    fn upoly_gcd_and_sqrt() {
        let base = FieldKind::Q;
        let t = UPoly::var(&base);
        let one = UPoly::one(&base);
        let sq = t.add(&one).mul(&t.add(&one)); // (t+1)^2
        assert_eq!(sq.sqrt(), Some(t.add(&one)));
        assert_eq!(sq.gcd(&t.add(&one)), t.add(&one));
        let lin = t.add(&one).mul(&t.sub(&one)); // t^2-1
        assert_eq!(lin.sqrt(), None);
    }

    #[test]
    fn scalar_square_tests() {
        assert!(q(4, 9).sqrt().is_some());
        assert!(q(2, 1).sqrt().is_none());
        let k = FieldKind::rat_fun_q();
        let t = Scalar::t_var(&k);
        assert!(t.mul(&t).sqrt().is_some());
        assert!(t.sqrt().is_none());
        // t is not a square: odd degree
        assert!(t.add(&Scalar::one(&k)).sqrt().is_none());
    }
}
