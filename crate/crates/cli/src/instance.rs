//! Instance documents: one JSON file per problem, with expressions embedded
//! as strings under the grammar in `parser`.

use anyhow::{anyhow, bail, Context, Result};
use serde::Deserialize;
use sigma_kernel_core::curve::{etale_localize, CurvePresentation, CurveSigma};
use sigma_kernel_core::diffring::DiffPolyRing;
use sigma_kernel_core::ground::{DiffGroundField, Gf, SigmaRule};
use sigma_kernel_core::linalg::Matrix;
use sigma_kernel_core::multipoly::MPoly;
use sigma_kernel_core::scalar::{FieldKind, Scalar};
use sigma_kernel_core::skew::FinDimSigmaModule;

use crate::parser::parse_expression;

#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
pub struct Instance {
    pub ground: GroundSection,
    pub ring: RingSection,
    #[serde(default)]
    pub sigma_set: Option<SigmaSetSection>,
    #[serde(default)]
    pub tower: Option<TowerSection>,
    #[serde(default)]
    pub morphism: Option<MorphismSection>,
    #[serde(default)]
    pub query: Option<QuerySection>,
}

#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
pub struct GroundSection {
    /// "Q", "Q(t)", "F<p>", or "F<p>^<m>"
    pub field: String,
    /// "identity", "shift_t:<d>", "scale_t:<q>", or "frobenius:<e>"
    pub sigma: String,
}

#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
pub struct RingSection {
    pub gens: Vec<String>,
    #[serde(default)]
    pub relations: Vec<String>,
    #[serde(default)]
    pub base_gens: usize,
}

#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
pub struct SigmaSetSection {
    #[serde(default)]
    pub ideal: Vec<String>,
    #[serde(default)]
    pub primes: Vec<Vec<String>>,
}

#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
pub struct TowerSection {
    pub relations: Vec<String>,
}

#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
pub struct MorphismSection {
    /// defining polynomial of the primitive element over the base
    pub minpoly: String,
    #[serde(default)]
    pub base_relation: Option<String>,
    /// level-0 endomorphism images (one per generator); selects the
    /// substitution presentation instead of the prolongation tower
    #[serde(default)]
    pub level0_sigma: Option<Vec<String>>,
    /// finite set Σ of level-0 lifts, each one image list per generator
    #[serde(default)]
    pub lifts: Option<Vec<Vec<String>>>,
}

#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
pub struct QuerySection {
    /// base prime generators
    #[serde(default)]
    pub point: Option<Vec<String>>,
    #[serde(default)]
    pub num: Option<String>,
    #[serde(default)]
    pub den: Option<String>,
    /// base primes spanning the points the computation may touch
    #[serde(default)]
    pub universe: Option<Vec<Vec<String>>>,
    #[serde(default)]
    pub prescriptions: Option<Vec<Prescription>>,
    #[serde(default)]
    pub module: Option<ModuleSection>,
}

#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
pub struct Prescription {
    pub point: Vec<String>,
    /// index into the sorted chain list over the point
    #[serde(default)]
    pub chain: usize,
    pub exponent: i64,
}

#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
pub struct ModuleSection {
    pub dim: usize,
    /// row-major matrices of scalars ("a/b" or integers)
    pub ideal_actions: Vec<Vec<Vec<String>>>,
    pub shift: Vec<Vec<String>>,
}

pub fn load(path: &str) -> Result<Instance> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path))?;
    let inst: Instance = serde_json::from_str(&text).with_context(|| format!("parsing {}", path))?;
    Ok(inst)
}

fn sigma_rule(spec: &str, kind: &FieldKind) -> Result<SigmaRule> {
    if spec == "identity" {
        return Ok(SigmaRule::Identity);
    }
    let (head, arg) = spec
        .split_once(':')
        .ok_or_else(|| anyhow!("bad sigma rule '{}'", spec))?;
    match head {
        "shift_t" => Ok(SigmaRule::TShift { delta: arg.parse()? }),
        "scale_t" => Ok(SigmaRule::TScale { q: scalar_entry(arg, kind)? }),
        "frobenius" => Ok(SigmaRule::Frobenius { e: arg.parse()? }),
        _ => bail!("unknown sigma rule '{}'", head),
    }
}

/// (difference ground field, optional enumeration field GF(p^m))
pub fn ground(sec: &GroundSection) -> Result<(DiffGroundField, Option<Gf>)> {
    let (kind, gf) = match sec.field.as_str() {
        "Q" => (FieldKind::Q, None),
        "Q(t)" => (FieldKind::RatFun(Box::new(FieldKind::Q)), None),
        f if f.starts_with('F') => {
            let body = &f[1..];
            let (p, m) = match body.split_once('^') {
                Some((p, m)) => (p.parse::<u64>()?, m.parse::<u32>()?),
                None => (body.parse::<u64>()?, 1),
            };
            (FieldKind::Fp(p), Some(Gf::new(p, m)))
        }
        other => bail!("unknown field '{}'", other),
    };
    let sigma = sigma_rule(&sec.sigma, &kind)?;
    Ok((DiffGroundField { kind, sigma }, gf))
}

pub struct Loaded {
    pub ring: DiffPolyRing,
    pub gf: Option<Gf>,
    pub relations: Vec<MPoly>,
    pub instance: Instance,
}

pub fn build(instance: Instance) -> Result<Loaded> {
    let (gfield, gf) = ground(&instance.ground)?;
    let names: Vec<&str> = instance.ring.gens.iter().map(|s| s.as_str()).collect();
    let ring = DiffPolyRing::new(gfield, &names);
    let relations = parse_all(&instance.ring.relations, &ring)?;
    Ok(Loaded { ring, gf, relations, instance })
}

pub fn parse_one(src: &str, ring: &DiffPolyRing) -> Result<MPoly> {
    parse_expression(src, ring).map_err(|e| anyhow!("'{}': {}", src, e))
}

pub fn parse_all(srcs: &[String], ring: &DiffPolyRing) -> Result<Vec<MPoly>> {
    srcs.iter().map(|s| parse_one(s, ring)).collect()
}

/// Build the curve presentation from the morphism section. The ring-level
/// relations act as base rules.
pub fn curve(l: &Loaded) -> Result<CurvePresentation> {
    let m = l
        .instance
        .morphism
        .as_ref()
        .ok_or_else(|| anyhow!("instance has no morphism section"))?;
    let base_gens = if l.instance.ring.base_gens > 0 { l.instance.ring.base_gens } else { 1 };
    let f = parse_one(&m.minpoly, &l.ring)?;
    let base_relation = m
        .base_relation
        .as_ref()
        .map(|s| parse_one(s, &l.ring))
        .transpose()?;
    if let Some(images) = &m.level0_sigma {
        if images.len() != l.ring.gen_names.len() {
            bail!("level0_sigma needs one image per generator");
        }
        let images = parse_all(images, &l.ring)?;
        return Ok(CurvePresentation {
            sigma: CurveSigma::Level0(images),
            ring: l.ring.clone(),
            base_gens,
            alpha: Some(base_gens),
            relations: vec![f],
            base_relation,
            inverted: vec![],
        });
    }
    etale_localize(l.ring.clone(), base_gens, l.relations.clone(), f, base_relation)
        .map_err(|e| anyhow!("{}", e))
}

pub fn lifts(l: &Loaded) -> Result<Option<Vec<Vec<MPoly>>>> {
    let Some(m) = &l.instance.morphism else { return Ok(None) };
    let Some(lifts) = &m.lifts else { return Ok(None) };
    let mut out = Vec::new();
    for lift in lifts {
        if lift.len() != l.ring.gen_names.len() {
            bail!("each lift needs one image per generator");
        }
        out.push(parse_all(lift, &l.ring)?);
    }
    Ok(Some(out))
}

fn scalar_entry(src: &str, kind: &FieldKind) -> Result<Scalar> {
    let s = src.trim();
    if let Some((n, d)) = s.split_once('/') {
        return Ok(Scalar::from_rational(kind, n.trim().parse()?, d.trim().parse()?));
    }
    Ok(Scalar::from_i64(kind, s.parse()?))
}

pub fn module(l: &Loaded) -> Result<FinDimSigmaModule> {
    let sec = l
        .instance
        .query
        .as_ref()
        .and_then(|q| q.module.as_ref())
        .ok_or_else(|| anyhow!("instance has no query.module section"))?;
    let kind = &l.ring.ground.kind;
    let parse_matrix = |rows: &Vec<Vec<String>>| -> Result<Matrix> {
        if rows.len() != sec.dim || rows.iter().any(|r| r.len() != sec.dim) {
            bail!("matrix shape must be dim x dim");
        }
        let mut data = Vec::new();
        for row in rows {
            let mut out = Vec::new();
            for e in row {
                out.push(scalar_entry(e, kind)?);
            }
            data.push(out);
        }
        Ok(Matrix::from_rows(kind, data))
    };
    let ideal_actions = sec
        .ideal_actions
        .iter()
        .map(parse_matrix)
        .collect::<Result<Vec<_>>>()?;
    let shift = parse_matrix(&sec.shift)?;
    Ok(FinDimSigmaModule { ground: l.ring.ground.clone(), dim: sec.dim, ideal_actions, shift })
}
