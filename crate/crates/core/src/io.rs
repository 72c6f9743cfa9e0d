//! JSON documents: loading with validation, and canonical output.
//!
//! Output objects are `serde_json::Value` maps, whose keys serialize in
//! sorted order, so printing them compactly gives canonical bytes.

use std::sync::Arc;

use serde_json::{json, Map, Value};

use crate::cohomology::{Cocycle1, Cocycle2, CohClass1, GammaAction};
use crate::error::{Error, Result};
use crate::global::{unramified_places, GlobalDatum, PlaceKind, PlaceSpec};
use crate::group::{FiniteGroup, Subgroup};
use crate::lien::{ExtensionCocycle, Lien};
use crate::local::{LocalClass, LocalFlags};

pub const SCHEMA: &str = "cohomolib/1";

fn bad(detail: impl Into<String>) -> Error {
    Error::Input { detail: detail.into() }
}

pub fn parse_str(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| bad(format!("malformed JSON: {e}")))
}

pub fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| bad(format!("missing field {key:?}")))
}

pub fn as_usize(v: &Value, what: &str) -> Result<usize> {
    v.as_u64().map(|x| x as usize).ok_or_else(|| bad(format!("{what} must be a non-negative integer")))
}

pub fn as_u64(v: &Value, what: &str) -> Result<u64> {
    v.as_u64().ok_or_else(|| bad(format!("{what} must be a non-negative integer")))
}

pub fn usize_list(v: &Value, what: &str) -> Result<Vec<usize>> {
    v.as_array()
        .ok_or_else(|| bad(format!("{what} must be an array")))?
        .iter()
        .map(|x| as_usize(x, what))
        .collect()
}

fn matrix(v: &Value, what: &str) -> Result<Vec<Vec<usize>>> {
    v.as_array()
        .ok_or_else(|| bad(format!("{what} must be an array of arrays")))?
        .iter()
        .map(|row| usize_list(row, what))
        .collect()
}

/// A group reference: a name such as `"C2xC2"`, a table document or a
/// permutation-generator document.
pub fn parse_group(v: &Value) -> Result<FiniteGroup> {
    if let Some(name) = v.as_str() {
        let g = FiniteGroup::by_name(name)?;
        crate::budget::check_target(g.order())?;
        return Ok(g);
    }
    if !v.is_object() {
        return Err(bad("group must be a name or an object"));
    }
    let mut g = if let Some(t) = v.get("table") {
        let g = FiniteGroup::from_table(&matrix(t, "table")?)?;
        if let Some(o) = v.get("order") {
            if as_usize(o, "order")? != g.order() {
                return Err(bad("order does not match the table"));
            }
        }
        g
    } else if let Some(gens) = v.get("permutation_generators") {
        let degree = as_usize(field(v, "degree")?, "degree")?;
        let gens = gens
            .as_array()
            .ok_or_else(|| bad("permutation_generators must be an array"))?
            .iter()
            .map(|c| matrix(c, "cycles"))
            .collect::<Result<Vec<_>>>()?;
        FiniteGroup::from_cycles(degree, &gens)?
    } else {
        return Err(bad("group needs a table or permutation_generators"));
    };
    crate::budget::check_target(g.order())?;
    if let Some(n) = v.get("name") {
        g = g.with_name(n.as_str().ok_or_else(|| bad("name must be a string"))?);
    }
    if let Some(l) = v.get("labels") {
        let labels = l
            .as_array()
            .ok_or_else(|| bad("labels must be an array"))?
            .iter()
            .map(|x| x.as_str().map(String::from).ok_or_else(|| bad("labels must be strings")))
            .collect::<Result<Vec<_>>>()?;
        g = g.with_labels(labels)?;
    }
    Ok(g)
}

pub fn group_json(g: &FiniteGroup) -> Value {
    let mut m = Map::new();
    m.insert("order".into(), json!(g.order()));
    m.insert("table".into(), json!(g.table_rows()));
    if let Some(n) = g.name() {
        m.insert("name".into(), json!(n));
    }
    if let Some(l) = g.labels() {
        m.insert("labels".into(), json!(l));
    }
    Value::Object(m)
}

pub fn parse_subgroup(g: &FiniteGroup, v: &Value, what: &str) -> Result<Subgroup> {
    Subgroup::new(g, &usize_list(v, what)?)
}

/// `{"gamma", "target", "automorphisms"?}`; a missing action is trivial.
/// `gamma` may be omitted when the caller supplies it.
pub fn parse_action(v: &Value, gamma: Option<Arc<FiniteGroup>>) -> Result<GammaAction> {
    let gamma = match (v.get("gamma"), gamma) {
        (Some(g), None) => Arc::new(parse_group(g)?),
        (Some(g), Some(given)) => {
            let parsed = parse_group(g)?;
            if parsed != *given {
                return Err(Error::ContextMismatch { detail: "action gamma differs from the datum".into() });
            }
            given
        }
        (None, Some(given)) => given,
        (None, None) => return Err(bad("missing field \"gamma\"")),
    };
    let target = Arc::new(parse_group(field(v, "target")?)?);
    match v.get("automorphisms") {
        None => Ok(GammaAction::trivial(gamma, target)),
        Some(a) => GammaAction::new(gamma, target, matrix(a, "automorphisms")?),
    }
}

pub fn action_json(a: &GammaAction) -> Value {
    json!({
        "gamma": group_json(a.gamma()),
        "target": group_json(a.target()),
        "automorphisms": a.perms(),
    })
}

pub fn parse_cocycle1(ctx: &GammaAction, v: &Value) -> Result<Cocycle1> {
    let values = match v.get("values") {
        Some(x) => usize_list(x, "values")?,
        None => usize_list(v, "values")?,
    };
    Cocycle1::new(ctx, values)
}

pub fn class1_json(c: &CohClass1) -> Value {
    json!({ "values": c.rep().values() })
}

pub fn cocycle2_json(c: &Cocycle2) -> Value {
    json!({ "values": c.values() })
}

/// `{"gamma", "g", "kappa"}` with `kappa` indices into the enumerated
/// outer automorphism group.
pub fn parse_lien(v: &Value) -> Result<Lien> {
    let gamma = Arc::new(parse_group(field(v, "gamma")?)?);
    let g = Arc::new(parse_group(field(v, "g")?)?);
    crate::budget::check_gamma(gamma.order())?;
    let kappa = match v.get("kappa") {
        Some(k) => usize_list(k, "kappa")?,
        None => vec![0; gamma.order()],
    };
    Lien::new(gamma, g, kappa)
}

pub fn lien_json(l: &Lien) -> Value {
    json!({ "gamma": group_json(l.gamma()), "g": group_json(l.g()), "kappa": l.kappa().images() })
}

/// `{"phi", "g"}`; a missing `phi` means the chosen lift of `κ`.
pub fn parse_extension(lien: &Arc<Lien>, v: &Value) -> Result<ExtensionCocycle> {
    let phi = match v.get("phi") {
        Some(p) => usize_list(p, "phi")?,
        None => lien.gamma().elements().map(|s| lien.lift_phi(s)).collect(),
    };
    let g = usize_list(field(v, "g")?, "g")?;
    ExtensionCocycle::new(lien, phi, g)
}

pub fn extension_json(e: &ExtensionCocycle) -> Value {
    json!({ "phi": e.phi(), "g": e.gvals() })
}

pub fn local_class_json(c: &LocalClass, f: &LocalFlags) -> Value {
    json!({ "s": c.s, "t": c.t, "flags": flags_json(f) })
}

pub fn flags_json(f: &LocalFlags) -> Value {
    json!({
        "unramified": f.unramified,
        "ramified": f.ramified,
        "cyclic": f.cyclic,
        "totally_ramified": f.totally_ramified,
    })
}

fn parse_place(gamma: &FiniteGroup, v: &Value) -> Result<PlaceSpec> {
    let name = field(v, "name")?.as_str().ok_or_else(|| bad("place name must be a string"))?;
    let kind = PlaceKind::parse(field(v, "kind")?.as_str().ok_or_else(|| bad("place kind must be a string"))?)?;
    let decomposition = usize_list(field(v, "decomposition")?, "decomposition")?;
    let inertia = match v.get("inertia") {
        Some(i) => usize_list(i, "inertia")?,
        None => vec![0],
    };
    let inertia = if inertia.is_empty() { vec![0] } else { inertia };
    let frobenius = as_usize(field(v, "frobenius")?, "frobenius")?;
    let tau = v.get("tau").filter(|t| !t.is_null()).map(|t| as_usize(t, "tau")).transpose()?;
    let q = as_u64(field(v, "q_mod_n")?, "q_mod_n")?;
    gamma.check_index(frobenius)?;
    PlaceSpec::new(gamma, name, kind, &decomposition, &inertia, frobenius, tau, q)
}

/// `{"gamma", "n", "chi", "n_prime", "n_L", "places", "unramified_places"?}`.
/// With `"unramified_places": true` an unramified place is added for every
/// cyclic subgroup.
pub fn parse_datum(v: &Value) -> Result<GlobalDatum> {
    let gamma = Arc::new(parse_group(field(v, "gamma")?)?);
    crate::budget::check_gamma(gamma.order())?;
    let n = as_u64(field(v, "n")?, "n")?;
    let chi = usize_list(field(v, "chi")?, "chi")?.into_iter().map(|c| c as u64).collect::<Vec<_>>();
    if chi.len() != gamma.order() {
        return Err(Error::ChiNotHom { detail: "chi needs one value per element".into() });
    }
    let n_prime = match v.get("n_prime") {
        Some(s) => parse_subgroup(&gamma, s, "n_prime")?,
        None => Subgroup::trivial(&gamma),
    };
    let n_l = match v.get("n_L") {
        Some(s) => parse_subgroup(&gamma, s, "n_L")?,
        None => Subgroup::trivial(&gamma),
    };
    let mut places = match v.get("places") {
        Some(p) => p
            .as_array()
            .ok_or_else(|| bad("places must be an array"))?
            .iter()
            .map(|x| parse_place(&gamma, x))
            .collect::<Result<Vec<_>>>()?,
        None => Vec::new(),
    };
    if v.get("unramified_places").and_then(Value::as_bool).unwrap_or(false) {
        if n == 0 {
            return Err(bad("n must be positive"));
        }
        places.extend(unramified_places(&gamma, n, &chi)?);
    }
    GlobalDatum::new(gamma, n, chi, n_prime, n_l, places)
}

pub fn datum_json(d: &GlobalDatum) -> Value {
    let places: Vec<Value> = d
        .places
        .iter()
        .map(|p| {
            json!({
                "name": p.name,
                "kind": p.kind,
                "decomposition": p.decomposition.elements(),
                "inertia": p.inertia.elements(),
                "frobenius": p.frobenius,
                "tau": p.tau,
                "q_mod_n": p.q_mod_n,
            })
        })
        .collect();
    json!({
        "gamma": group_json(&d.gamma),
        "n": d.n,
        "chi": d.chi,
        "n_prime": d.n_prime.elements(),
        "n_L": d.n_l.elements(),
        "places": places,
    })
}

/// `[{"place", "values"}]`.
pub fn parse_target_entries(v: &Value) -> Result<Vec<(String, Vec<usize>)>> {
    v.as_array()
        .ok_or_else(|| bad("targets must be an array"))?
        .iter()
        .map(|t| {
            let place = field(t, "place")?.as_str().ok_or_else(|| bad("place must be a string"))?.to_string();
            let key = if t.get("values").is_some() { "values" } else { "h" };
            Ok((place, usize_list(field(t, key)?, key)?))
        })
        .collect()
}

/// Compact canonical serialization followed by a newline.
pub fn to_canonical(v: &Value) -> String {
    let mut s = serde_json::to_string(v).expect("values serialize");
    s.push('\n');
    s
}
