//! `.semicat.json` documents.
//!
//! A document is `{"kind", "version", "payload"}`. Rendering is canonical:
//! keys sorted, two-space indent, trailing newline, categories always
//! inlined. Parsing accepts `{"$ref": path}` wherever a category is
//! expected; the path is resolved against the referencing file's directory.

use semicat_core::kernel::{RawCategory, RawMorphism, ValidationError};
use semicat_core::props::{PCell, PMode, PSolution};
use semicat_core::semiadj::Semiadjunction;
use semicat_core::transform::Transformation;
use semicat_core::{validate_category, FinCategory, IdemNatTransf, Mor, Obj, Semifunctor};
use serde_json::{json, Map, Value};
use std::collections::BTreeMap;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::sync::Arc;

pub const VERSION: u64 = 1;
pub const EXTENSION: &str = ".semicat.json";

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum IoError {
    #[error("parse error at {path}: {message}")]
    Parse { path: String, message: String },
    #[error("schema error at {path}: missing field `{field}`{note}")]
    Schema { path: String, field: String, note: String },
    #[error("invalid {kind} at {path}: {message}")]
    Invalid { path: String, kind: &'static str, message: String },
    #[error("cannot read `{file}`: {message}")]
    Read { file: String, message: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)] // short-lived, one per file
pub enum Document {
    Category(Arc<FinCategory>),
    Semifunctor(Semifunctor),
    Transformation(Transformation),
    Semiadjunction(Semiadjunction),
    IdemNat(IdemNatTransf),
    PSolution(PSolution),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Category(_) => "category",
            Document::Semifunctor(_) => "semifunctor",
            Document::Transformation(_) => "transformation",
            Document::Semiadjunction(_) => "semiadjunction",
            Document::IdemNat(_) => "idem-nat",
            Document::PSolution(_) => "p-solution",
        }
    }

    pub fn to_value(&self) -> Value {
        let payload = match self {
            Document::Category(c) => category_value(c),
            Document::Semifunctor(f) => semifunctor_value(f),
            Document::Transformation(t) => transformation_value(t),
            Document::Semiadjunction(a) => semiadjunction_value(a),
            Document::IdemNat(e) => idem_value(e),
            Document::PSolution(p) => p_solution_value(p),
        };
        json!({ "kind": self.kind(), "version": VERSION, "payload": payload })
    }
}

/// Canonical bytes of a document.
pub fn render(doc: &Document) -> String {
    render_value(&doc.to_value())
}

/// Canonical rendering of any JSON value (`serde_json` maps are sorted).
pub fn render_value(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

/// Parses a document; `$ref`s resolve against the current directory.
pub fn parse(bytes: &[u8]) -> Result<Document, IoError> {
    parse_in(bytes, Path::new("."))
}

/// Parses a document whose `$ref`s resolve against `base`.
pub fn parse_in(bytes: &[u8], base: &Path) -> Result<Document, IoError> {
    let v = parse_json(bytes)?;
    Reader { base: base.to_path_buf() }.document(&v, "$")
}

/// Reads a file, or stdin for `-`.
pub fn read_bytes(path: &str) -> Result<Vec<u8>, IoError> {
    let err = |e: std::io::Error| IoError::Read { file: path.into(), message: e.to_string() };
    if path == "-" {
        let mut buf = Vec::new();
        std::io::stdin().read_to_end(&mut buf).map_err(err)?;
        Ok(buf)
    } else {
        std::fs::read(path).map_err(err)
    }
}

pub fn read_document(path: &str) -> Result<Document, IoError> {
    let bytes = read_bytes(path)?;
    parse_in(&bytes, &base_of(path))
}

fn base_of(path: &str) -> PathBuf {
    match Path::new(path).parent() {
        Some(p) if path != "-" && !p.as_os_str().is_empty() => p.to_path_buf(),
        _ => PathBuf::from("."),
    }
}

fn parse_json(bytes: &[u8]) -> Result<Value, IoError> {
    serde_json::from_slice(bytes).map_err(|e| IoError::Parse { path: "$".into(), message: e.to_string() })
}

/// Unvalidated semiadjunction data `(F, G, η, ε)`, for promotion.
pub fn read_semiadjunction_data(path: &str) -> Result<(Semifunctor, Semifunctor, Vec<Mor>, Vec<Mor>), IoError> {
    let v = parse_json(&read_bytes(path)?)?;
    let r = Reader { base: base_of(path) };
    let payload = r.header(&v, "$", "semiadjunction")?;
    r.semiadjunction_parts(payload, "$.payload")
}

// ---- rendering ------------------------------------------------------------

pub fn category_value(c: &FinCategory) -> Value {
    let raw = c.to_raw();
    let identities: Map<String, Value> = raw.identities.into_iter().map(|(o, m)| (o, Value::String(m))).collect();
    json!({
        "objects": raw.objects,
        "morphisms": raw.morphisms.iter().map(|m| json!({"id": m.id, "src": m.src, "dst": m.dst})).collect::<Vec<_>>(),
        "identities": identities,
        "compose": raw.compose,
    })
}

fn obj_map_value(source: &FinCategory, target: &FinCategory, objs: impl Iterator<Item = (Obj, Obj)>) -> Value {
    Value::Object(objs.map(|(x, y)| (source.obj_name(x).into(), Value::String(target.obj_name(y).into()))).collect())
}

/// `{obj: mor}` for per-object components.
pub fn components_value(base: &FinCategory, target: &FinCategory, comps: &[Mor]) -> Value {
    Value::Object(
        base.objects().map(|x| (base.obj_name(x).into(), Value::String(target.mor_name(comps[x.0]).into()))).collect(),
    )
}

pub fn semifunctor_value(f: &Semifunctor) -> Value {
    let (c, d) = (f.source(), f.target());
    let morphism_map: Map<String, Value> =
        c.morphisms().map(|m| (c.mor_name(m).into(), Value::String(d.mor_name(f.mor(m)).into()))).collect();
    json!({
        "source": category_value(c),
        "target": category_value(d),
        "object_map": obj_map_value(c, d, c.objects().map(|x| (x, f.obj(x)))),
        "morphism_map": morphism_map,
    })
}

pub fn transformation_value(t: &Transformation) -> Value {
    json!({
        "from": semifunctor_value(t.from()),
        "to": semifunctor_value(t.to()),
        "components": components_value(t.from().source(), t.from().target(), t.components()),
    })
}

pub fn semiadjunction_value(a: &Semiadjunction) -> Value {
    let (f, g) = (a.left(), a.right());
    json!({
        "F": semifunctor_value(f),
        "G": semifunctor_value(g),
        "unit": components_value(f.source(), f.source(), a.unit().components()),
        "counit": components_value(f.target(), f.target(), a.counit().components()),
    })
}

pub fn idem_value(e: &IdemNatTransf) -> Value {
    json!({
        "category": category_value(e.base()),
        "components": components_value(e.base(), e.base(), e.components()),
    })
}

pub fn p_solution_value(p: &PSolution) -> Value {
    let f = p.functor();
    let (c, d) = (f.source(), f.target());
    let values: Vec<Value> = p
        .cells()
        .map(|(cell, v)| {
            json!({"x": c.obj_name(cell.x), "y": c.obj_name(cell.y), "d": d.mor_name(cell.d), "p": c.mor_name(v)})
        })
        .collect();
    json!({ "semifunctor": semifunctor_value(f), "mode": p.mode().name(), "values": values })
}

pub fn mode_from_name(s: &str) -> Option<PMode> {
    match s {
        "separable" | "sep" => Some(PMode::Separable),
        "naturally-semifull" | "nat-semifull" | "natsf" => Some(PMode::NaturallySemifull),
        "semiseparable" | "semisep" => Some(PMode::Semiseparable),
        _ => None,
    }
}

// ---- parsing --------------------------------------------------------------

struct Reader {
    base: PathBuf,
}

fn parse_err(path: &str, message: impl Into<String>) -> IoError {
    IoError::Parse { path: path.into(), message: message.into() }
}

fn field<'a>(v: &'a Value, path: &str, name: &str) -> Result<&'a Value, IoError> {
    let obj = v.as_object().ok_or_else(|| parse_err(path, "expected an object"))?;
    obj.get(name).ok_or_else(|| IoError::Schema { path: path.into(), field: name.into(), note: String::new() })
}

fn as_str<'a>(v: &'a Value, path: &str) -> Result<&'a str, IoError> {
    v.as_str().ok_or_else(|| parse_err(path, "expected a string"))
}

fn as_array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>, IoError> {
    v.as_array().ok_or_else(|| parse_err(path, "expected an array"))
}

fn as_object<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>, IoError> {
    v.as_object().ok_or_else(|| parse_err(path, "expected an object"))
}

fn str_field<'a>(v: &'a Value, path: &str, name: &str) -> Result<&'a str, IoError> {
    as_str(field(v, path, name)?, &format!("{path}.{name}"))
}

fn invalid(path: &str, kind: &'static str, e: impl std::fmt::Display) -> IoError {
    IoError::Invalid { path: path.into(), kind, message: e.to_string() }
}

impl Reader {
    fn header<'a>(&self, v: &'a Value, path: &str, expected: &str) -> Result<&'a Value, IoError> {
        let kind = str_field(v, path, "kind")?;
        if kind != expected {
            return Err(parse_err(&format!("{path}.kind"), format!("expected `{expected}`, found `{kind}`")));
        }
        self.version(v, path)?;
        field(v, path, "payload")
    }

    fn version(&self, v: &Value, path: &str) -> Result<(), IoError> {
        match field(v, path, "version")?.as_u64() {
            Some(VERSION) => Ok(()),
            Some(n) => Err(parse_err(&format!("{path}.version"), format!("unsupported version {n}"))),
            None => Err(parse_err(&format!("{path}.version"), "expected an integer")),
        }
    }

    fn document(&self, v: &Value, path: &str) -> Result<Document, IoError> {
        let kind = str_field(v, path, "kind")?;
        self.version(v, path)?;
        let payload = field(v, path, "payload")?;
        let p = &format!("{path}.payload");
        Ok(match kind {
            "category" => Document::Category(self.category(payload, p)?),
            "semifunctor" => Document::Semifunctor(self.semifunctor(payload, p)?),
            "transformation" => Document::Transformation(self.transformation(payload, p)?),
            "semiadjunction" => Document::Semiadjunction(self.semiadjunction(payload, p)?),
            "idem-nat" => Document::IdemNat(self.idem(payload, p)?),
            "p-solution" => Document::PSolution(self.p_solution(payload, p)?),
            other => return Err(parse_err(&format!("{path}.kind"), format!("unknown kind `{other}`"))),
        })
    }

    /// A category payload, inline or `{"$ref": path}` to a category document.
    fn category(&self, v: &Value, path: &str) -> Result<Arc<FinCategory>, IoError> {
        if let Some(r) = v.as_object().and_then(|o| o.get("$ref")) {
            let file = self.base.join(as_str(r, &format!("{path}.$ref"))?);
            let name = file.display().to_string();
            let bytes =
                std::fs::read(&file).map_err(|e| IoError::Read { file: name.clone(), message: e.to_string() })?;
            let inner = Reader { base: file.parent().map(Path::to_path_buf).unwrap_or_default() };
            let doc = parse_json(&bytes)?;
            let payload = inner.header(&doc, &name, "category")?;
            return inner.category(payload, &format!("{name}.payload"));
        }
        let objects = as_array(field(v, path, "objects")?, &format!("{path}.objects"))?
            .iter()
            .enumerate()
            .map(|(i, o)| as_str(o, &format!("{path}.objects[{i}]")).map(String::from))
            .collect::<Result<Vec<_>, _>>()?;
        let mut morphisms = Vec::new();
        for (i, m) in as_array(field(v, path, "morphisms")?, &format!("{path}.morphisms"))?.iter().enumerate() {
            let p = format!("{path}.morphisms[{i}]");
            morphisms.push(RawMorphism {
                id: str_field(m, &p, "id")?.into(),
                src: str_field(m, &p, "src")?.into(),
                dst: str_field(m, &p, "dst")?.into(),
            });
        }
        let ip = format!("{path}.identities");
        let identities = as_object(field(v, path, "identities")?, &ip)?
            .iter()
            .map(|(o, m)| Ok((o.clone(), as_str(m, &format!("{ip}.{o}"))?.to_string())))
            .collect::<Result<Vec<_>, IoError>>()?;
        let cp = format!("{path}.compose");
        let mut compose = Vec::new();
        for (i, t) in as_array(field(v, path, "compose")?, &cp)?.iter().enumerate() {
            let p = format!("{cp}[{i}]");
            let t = as_array(t, &p)?;
            if t.len() != 3 {
                return Err(parse_err(&p, "expected [g, f, g∘f]"));
            }
            let s = |j: usize| as_str(&t[j], &format!("{p}[{j}]")).map(String::from);
            compose.push([s(0)?, s(1)?, s(2)?]);
        }
        let raw = RawCategory { objects, morphisms, identities, compose };
        match validate_category(&raw) {
            Ok(c) => Ok(Arc::new(c)),
            Err(e @ ValidationError::MissingComposite { .. }) => {
                Err(IoError::Schema { path: path.into(), field: "compose".into(), note: format!(" ({e})") })
            }
            Err(e) => Err(invalid(path, "category", e)),
        }
    }

    fn semifunctor(&self, v: &Value, path: &str) -> Result<Semifunctor, IoError> {
        let c = self.category(field(v, path, "source")?, &format!("{path}.source"))?;
        let d = self.category(field(v, path, "target")?, &format!("{path}.target"))?;
        let op = format!("{path}.object_map");
        let om = as_object(field(v, path, "object_map")?, &op)?;
        let mp = format!("{path}.morphism_map");
        let mm = as_object(field(v, path, "morphism_map")?, &mp)?;
        let mut objs = Vec::with_capacity(c.num_objects());
        for x in c.objects() {
            let name = c.obj_name(x);
            let t = om.get(name).ok_or_else(|| IoError::Schema {
                path: op.clone(),
                field: name.into(),
                note: String::new(),
            })?;
            let t = as_str(t, &format!("{op}.{name}"))?;
            objs.push(
                d.obj(t)
                    .ok_or_else(|| invalid(&format!("{op}.{name}"), "semifunctor", format!("unknown object `{t}`")))?,
            );
        }
        let mut mors = Vec::with_capacity(c.num_morphisms());
        for m in c.morphisms() {
            let name = c.mor_name(m);
            let t = mm.get(name).ok_or_else(|| IoError::Schema {
                path: mp.clone(),
                field: name.into(),
                note: String::new(),
            })?;
            let t = as_str(t, &format!("{mp}.{name}"))?;
            mors.push(
                d.mor(t).ok_or_else(|| {
                    invalid(&format!("{mp}.{name}"), "semifunctor", format!("unknown morphism `{t}`"))
                })?,
            );
        }
        for k in om.keys().chain(mm.keys()) {
            if c.obj(k).is_none() && c.mor(k).is_none() {
                return Err(invalid(path, "semifunctor", format!("`{k}` is not in the source")));
            }
        }
        Semifunctor::new(c, d, objs, mors).map_err(|e| invalid(path, "semifunctor", e))
    }

    fn components(&self, v: &Value, path: &str, base: &FinCategory, target: &FinCategory) -> Result<Vec<Mor>, IoError> {
        let map = as_object(v, path)?;
        base.objects()
            .map(|x| {
                let name = base.obj_name(x);
                let m = map.get(name).ok_or_else(|| IoError::Schema {
                    path: path.into(),
                    field: name.into(),
                    note: String::new(),
                })?;
                let m = as_str(m, &format!("{path}.{name}"))?;
                target
                    .mor(m)
                    .ok_or_else(|| invalid(&format!("{path}.{name}"), "component", format!("unknown morphism `{m}`")))
            })
            .collect()
    }

    fn transformation(&self, v: &Value, path: &str) -> Result<Transformation, IoError> {
        let f = self.semifunctor(field(v, path, "from")?, &format!("{path}.from"))?;
        let g = self.semifunctor(field(v, path, "to")?, &format!("{path}.to"))?;
        let comps =
            self.components(field(v, path, "components")?, &format!("{path}.components"), f.source(), f.target())?;
        Transformation::new(f, g, comps).map_err(|e| invalid(path, "transformation", e))
    }

    fn semiadjunction_parts(
        &self,
        v: &Value,
        path: &str,
    ) -> Result<(Semifunctor, Semifunctor, Vec<Mor>, Vec<Mor>), IoError> {
        let f = self.semifunctor(field(v, path, "F")?, &format!("{path}.F"))?;
        let g = self.semifunctor(field(v, path, "G")?, &format!("{path}.G"))?;
        let unit = self.components(field(v, path, "unit")?, &format!("{path}.unit"), f.source(), f.source())?;
        let counit = self.components(field(v, path, "counit")?, &format!("{path}.counit"), f.target(), f.target())?;
        Ok((f, g, unit, counit))
    }

    fn semiadjunction(&self, v: &Value, path: &str) -> Result<Semiadjunction, IoError> {
        let (f, g, unit, counit) = self.semiadjunction_parts(v, path)?;
        Semiadjunction::new(f, g, unit, counit).map_err(|e| invalid(path, "semiadjunction", e))
    }

    fn idem(&self, v: &Value, path: &str) -> Result<IdemNatTransf, IoError> {
        let c = self.category(field(v, path, "category")?, &format!("{path}.category"))?;
        let comps = self.components(field(v, path, "components")?, &format!("{path}.components"), &c, &c)?;
        IdemNatTransf::new(c, comps).map_err(|e| invalid(path, "idem-nat", e))
    }

    fn p_solution(&self, v: &Value, path: &str) -> Result<PSolution, IoError> {
        let f = self.semifunctor(field(v, path, "semifunctor")?, &format!("{path}.semifunctor"))?;
        let m = str_field(v, path, "mode")?;
        let mode =
            mode_from_name(m).ok_or_else(|| parse_err(&format!("{path}.mode"), format!("unknown mode `{m}`")))?;
        let (c, d) = (f.source().clone(), f.target().clone());
        let vp = format!("{path}.values");
        let mut table: BTreeMap<PCell, Mor> = BTreeMap::new();
        for (i, entry) in as_array(field(v, path, "values")?, &vp)?.iter().enumerate() {
            let p = format!("{vp}[{i}]");
            let obj = |k: &str| {
                let s = str_field(entry, &p, k)?;
                c.obj(s).ok_or_else(|| invalid(&format!("{p}.{k}"), "p-solution", format!("unknown object `{s}`")))
            };
            let mor = |cat: &FinCategory, k: &str| {
                let s = str_field(entry, &p, k)?;
                cat.mor(s).ok_or_else(|| invalid(&format!("{p}.{k}"), "p-solution", format!("unknown morphism `{s}`")))
            };
            let cell = PCell { x: obj("x")?, y: obj("y")?, d: mor(&d, "d")? };
            if d.src(cell.d) != f.obj(cell.x) || d.dst(cell.d) != f.obj(cell.y) {
                return Err(invalid(&p, "p-solution", "cell morphism has the wrong endpoints"));
            }
            table.insert(cell, mor(&c, "p")?);
        }
        let mut missing = None;
        let sol = PSolution::from_fn(&f, mode, |cell| {
            table.get(&cell).copied().unwrap_or_else(|| {
                missing.get_or_insert(cell);
                Mor(usize::MAX)
            })
        });
        if let Some(cell) = missing {
            let note =
                format!(" (no value for ({}, {}, {}))", c.obj_name(cell.x), c.obj_name(cell.y), d.mor_name(cell.d));
            return Err(IoError::Schema { path: vp, field: "values".into(), note });
        }
        sol.check(mode).map_err(|e| invalid(path, "p-solution", format!("{e:?}")))?;
        Ok(sol)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use semicat_core::gallery::cats;

    #[test]
    fn category_round_trip_is_byte_stable() {
        for c in [cats::m3(), cats::walking_idempotent(), cats::mat2(), cats::split_pair()] {
            let doc = Document::Category(c.clone());
            let text = render(&doc);
            let back = parse(text.as_bytes()).unwrap();
            assert_eq!(back, doc);
            assert_eq!(render(&back), text);
        }
    }

    #[test]
    fn missing_composite_is_a_schema_error() {
        let mut v = Document::Category(cats::m3()).to_value();
        v["payload"]["compose"].as_array_mut().unwrap().pop();
        let err = parse(render_value(&v).as_bytes()).unwrap_err();
        assert!(matches!(err, IoError::Schema { ref field, .. } if field == "compose"), "{err}");
    }

    #[test]
    fn paths_point_at_the_offending_value() {
        let mut v = Document::Category(cats::m3()).to_value();
        v["payload"]["morphisms"][1]["src"] = json!(3);
        let err = parse(render_value(&v).as_bytes()).unwrap_err();
        assert_eq!(
            err,
            IoError::Parse { path: "$.payload.morphisms[1].src".into(), message: "expected a string".into() }
        );
        let err = parse(b"").unwrap_err();
        assert!(matches!(err, IoError::Parse { ref path, .. } if path == "$"));
        let err = parse(br#"{"kind":"category","version":1}"#).unwrap_err();
        assert!(matches!(err, IoError::Schema { ref field, .. } if field == "payload"));
    }

    #[test]
    fn refs_resolve_relative_to_the_file() {
        let tmp = tempfile::tempdir().unwrap();
        let dir = tmp.path();
        let m3 = cats::m3();
        std::fs::write(dir.join("m3.semicat.json"), render(&Document::Category(m3.clone()))).unwrap();
        let f = Semifunctor::identity(m3);
        let mut v = Document::Semifunctor(f.clone()).to_value();
        v["payload"]["source"] = json!({"$ref": "m3.semicat.json"});
        v["payload"]["target"] = json!({"$ref": "m3.semicat.json"});
        let path = dir.join("f.semicat.json");
        std::fs::write(&path, render_value(&v)).unwrap();
        assert_eq!(read_document(path.to_str().unwrap()).unwrap(), Document::Semifunctor(f));
    }
}
