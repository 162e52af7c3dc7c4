//! JSON encodings of the library types.
//!
//! Shape problems are reported as malformed input; values that parse but
//! violate an invariant (an empty interval, say) surface as domain errors
//! from the constructors.

use serde_json::{json, Map, Value};

use crate::barcode::{Barcode, ChainModule};
use crate::coord::{format_rational, parse_rational, Coord, ExtCoord, Rational};
use crate::error::{Error, Result};
use crate::field::ScalarField;
use crate::fp::{FpInterval, FpModule, FpMorphism, Generator};
use crate::interleaving::{Bracket, ExtDistance};
use crate::linalg::Matrix;
use crate::order::{DPoint, Flavor};
use crate::spectrum::{DEndpoint, DInterval, RegionGap, SerreRegion, Spectrum, SymbolicSet, Window};

pub trait Json: Sized {
    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Result<Self>;
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key)
        .ok_or_else(|| Error::malformed(format!("missing field {key:?} in {v}")))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| Error::malformed(format!("{what} must be an array, got {v}")))
}

fn index(v: &Value, what: &str) -> Result<usize> {
    v.as_u64()
        .map(|n| n as usize)
        .ok_or_else(|| Error::malformed(format!("{what} must be a non-negative integer, got {v}")))
}

fn list<T: Json>(v: &Value, what: &str) -> Result<Vec<T>> {
    array(v, what)?.iter().map(T::from_json).collect()
}

impl Json for Rational {
    fn to_json(&self) -> Value {
        Value::String(format_rational(self))
    }

    fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::String(s) => parse_rational(s),
            Value::Number(n) => parse_rational(&n.to_string()),
            _ => Err(Error::malformed(format!("expected a rational, got {v}"))),
        }
    }
}

impl Json for Coord {
    fn to_json(&self) -> Value {
        match self.surd() {
            None => self.rational_part().to_json(),
            Some(s) => json!({
                "rat": self.rational_part().to_json(),
                "surd": {"q": s.coeff().to_json(), "d": s.radicand()},
            }),
        }
    }

    fn from_json(v: &Value) -> Result<Self> {
        if v.is_object() {
            let rat = Rational::from_json(field(v, "rat")?)?;
            let surd = field(v, "surd")?;
            let q = Rational::from_json(field(surd, "q")?)?;
            let d = field(surd, "d")?
                .as_u64()
                .ok_or_else(|| Error::malformed("surd radicand must be a positive integer"))?;
            return Coord::with_surd(rat, q, d);
        }
        Rational::from_json(v).map(Coord::rational)
    }
}

impl Json for ExtCoord {
    fn to_json(&self) -> Value {
        match self {
            ExtCoord::Finite(c) => c.to_json(),
            ExtCoord::PlusInfinity => Value::String("inf".into()),
        }
    }

    fn from_json(v: &Value) -> Result<Self> {
        if v.as_str().is_some_and(|s| s.trim() == "inf") {
            return Ok(ExtCoord::PlusInfinity);
        }
        Coord::from_json(v).map(ExtCoord::Finite)
    }
}

impl Json for DPoint {
    fn to_json(&self) -> Value {
        let flavor = match self.flavor() {
            Flavor::Strict => "strict",
            Flavor::Principal => "principal",
        };
        json!({"coord": self.coord().to_json(), "flavor": flavor})
    }

    fn from_json(v: &Value) -> Result<Self> {
        let coord = ExtCoord::from_json(field(v, "coord")?)?;
        let flavor = match field(v, "flavor")?.as_str() {
            Some("strict") => Flavor::Strict,
            Some("principal") => Flavor::Principal,
            _ => return Err(Error::malformed(format!("bad flavor in {v}"))),
        };
        DPoint::new(coord, flavor)
    }
}

/// Parses `"[a,b)"` or `"[a,inf)"`.
pub fn parse_interval_shorthand(s: &str) -> Result<FpInterval> {
    let t = s.trim();
    let inner = t
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| Error::malformed(format!("interval shorthand must look like [a,b): {s:?}")))?;
    let (a, b) = inner
        .split_once(',')
        .ok_or_else(|| Error::malformed(format!("missing comma in {s:?}")))?;
    let a = parse_rational(a)?;
    let b = if b.trim() == "inf" {
        ExtCoord::PlusInfinity
    } else {
        ExtCoord::Finite(Coord::rational(parse_rational(b)?))
    };
    FpInterval::new(Coord::rational(a), b)
}

impl Json for FpInterval {
    fn to_json(&self) -> Value {
        json!({"start": self.start().to_json(), "end": self.end().to_json()})
    }

    fn from_json(v: &Value) -> Result<Self> {
        if let Some(s) = v.as_str() {
            return parse_interval_shorthand(s);
        }
        let start = Coord::from_json(field(v, "start")?)?;
        let end = ExtCoord::from_json(field(v, "end")?)?;
        FpInterval::new(start, end)
    }
}

impl Json for FpModule {
    fn to_json(&self) -> Value {
        let s: Vec<Value> = self.summands().iter().map(Json::to_json).collect();
        json!({ "summands": s })
    }

    fn from_json(v: &Value) -> Result<Self> {
        let summands = match v {
            Value::Array(_) => v,
            _ => field(v, "summands")?,
        };
        Ok(FpModule::new(list(summands, "summands")?))
    }
}

impl Json for FpMorphism {
    fn to_json(&self) -> Value {
        let entries: Vec<Value> = self
            .entries()
            .map(|(i, j, x)| json!({"from": i, "to": j, "value": x.to_json()}))
            .collect();
        json!({
            "source": self.source().to_json(),
            "target": self.target().to_json(),
            "entries": entries,
        })
    }

    fn from_json(v: &Value) -> Result<Self> {
        morphism_from_json(v, ScalarField::ExactRationals)
    }
}

pub fn morphism_from_json(v: &Value, field_k: ScalarField) -> Result<FpMorphism> {
    let source = FpModule::from_json(field(v, "source")?)?;
    let target = FpModule::from_json(field(v, "target")?)?;
    let mut entries = Vec::new();
    if let Some(es) = v.get("entries") {
        for e in array(es, "entries")? {
            entries.push((
                index(field(e, "from")?, "from")?,
                index(field(e, "to")?, "to")?,
                Rational::from_json(field(e, "value")?)?,
            ));
        }
    }
    FpMorphism::new(field_k, source, target, entries)
}

impl Json for Matrix {
    fn to_json(&self) -> Value {
        Value::Array(
            self.to_rows()
                .iter()
                .map(|r| Value::Array(r.iter().map(Json::to_json).collect()))
                .collect(),
        )
    }

    fn from_json(v: &Value) -> Result<Self> {
        let rows: Vec<Vec<Rational>> = array(v, "matrix")?
            .iter()
            .map(|r| list(r, "matrix row"))
            .collect::<Result<_>>()?;
        let cols = rows.first().map_or(0, Vec::len);
        Matrix::from_rows(rows, cols)
    }
}

impl Json for ChainModule {
    fn to_json(&self) -> Value {
        let maps: Vec<Value> = self.maps().iter().map(Json::to_json).collect();
        json!({"dims": self.dims(), "maps": maps})
    }

    /// Empty matrices carry no column count in JSON, so shapes are taken
    /// from `dims`.
    fn from_json(v: &Value) -> Result<Self> {
        let dims: Vec<usize> = array(field(v, "dims")?, "dims")?
            .iter()
            .map(|d| index(d, "dimension"))
            .collect::<Result<_>>()?;
        let raw = array(field(v, "maps")?, "maps")?;
        let mut maps = Vec::with_capacity(raw.len());
        for (t, m) in raw.iter().enumerate() {
            let rows: Vec<Vec<Rational>> = array(m, "matrix")?
                .iter()
                .map(|r| list(r, "matrix row"))
                .collect::<Result<_>>()?;
            let cols = dims.get(t).copied().unwrap_or(0);
            maps.push(Matrix::from_rows(rows, cols)?);
        }
        ChainModule::new(dims, maps)
    }
}

impl Json for Barcode {
    fn to_json(&self) -> Value {
        let bars: Vec<Value> = self
            .bars()
            .map(|(s, e, m)| json!({"start": s, "end": e, "mult": m}))
            .collect();
        json!({ "bars": bars })
    }

    fn from_json(v: &Value) -> Result<Self> {
        let mut b = Barcode::new();
        for bar in array(field(v, "bars")?, "bars")? {
            let mult = match bar.get("mult") {
                Some(m) => index(m, "mult")?,
                None => 1,
            };
            b.add(
                index(field(bar, "start")?, "start")?,
                index(field(bar, "end")?, "end")?,
                mult,
            )?;
        }
        Ok(b)
    }
}

impl Json for DEndpoint {
    fn to_json(&self) -> Value {
        match self {
            DEndpoint::BelowAll => json!({"point": "below_all", "included": false}),
            DEndpoint::Included(p) => json!({"point": p.to_json(), "included": true}),
            DEndpoint::Excluded(p) => json!({"point": p.to_json(), "included": false}),
        }
    }

    fn from_json(v: &Value) -> Result<Self> {
        let point = field(v, "point")?;
        let included = field(v, "included")?
            .as_bool()
            .ok_or_else(|| Error::malformed(format!("\"included\" must be boolean in {v}")))?;
        if point.as_str() == Some("below_all") {
            if included {
                return Err(Error::domain("BelowAll cannot be included"));
            }
            return Ok(DEndpoint::BelowAll);
        }
        let p = DPoint::from_json(point)?;
        Ok(if included {
            DEndpoint::Included(p)
        } else {
            DEndpoint::Excluded(p)
        })
    }
}

impl Json for DInterval {
    fn to_json(&self) -> Value {
        json!({"lo": self.lo.to_json(), "hi": self.hi.to_json()})
    }

    fn from_json(v: &Value) -> Result<Self> {
        Ok(DInterval::new(
            DEndpoint::from_json(field(v, "lo")?)?,
            DEndpoint::from_json(field(v, "hi")?)?,
        ))
    }
}

impl Json for SymbolicSet {
    fn to_json(&self) -> Value {
        let c: Vec<Value> = self.components().iter().map(Json::to_json).collect();
        json!({ "components": c })
    }

    /// Only meaningful after canonicalization; use [`set_from_json`].
    fn from_json(_: &Value) -> Result<Self> {
        Err(Error::internal("symbolic sets need a model; use set_from_json"))
    }
}

/// Reads a set, accepting either `{"components": [...]}` or a bare list,
/// and canonicalizes it in the given spectrum.
pub fn set_from_json(v: &Value, spectrum: &Spectrum) -> Result<SymbolicSet> {
    let comps = match v {
        Value::Array(_) => v,
        _ => field(v, "components")?,
    };
    spectrum.set(list::<DInterval>(comps, "components")?)
}

impl Json for Window {
    fn to_json(&self) -> Value {
        json!({"a": self.a().to_json(), "b": self.b().to_json()})
    }

    fn from_json(v: &Value) -> Result<Self> {
        Window::new(
            Coord::from_json(field(v, "a")?)?,
            ExtCoord::from_json(field(v, "b")?)?,
        )
    }
}

impl Json for SerreRegion {
    fn to_json(&self) -> Value {
        let gaps: Vec<Value> = self
            .gaps()
            .iter()
            .map(|g| {
                json!({
                    "gap": g.gap.to_json(),
                    "covered": g.covered.as_ref().map_or(Value::Null, Json::to_json),
                })
            })
            .collect();
        json!({ "gaps": gaps })
    }

    fn from_json(v: &Value) -> Result<Self> {
        let mut gaps = Vec::new();
        for g in array(field(v, "gaps")?, "gaps")? {
            let covered = match g.get("covered") {
                None | Some(Value::Null) => None,
                Some(c) => Some(DInterval::from_json(c)?),
            };
            gaps.push(RegionGap {
                gap: DInterval::from_json(field(g, "gap")?)?,
                covered,
            });
        }
        Ok(SerreRegion::new(gaps))
    }
}

impl Json for Generator {
    fn to_json(&self) -> Value {
        let c: Vec<Value> = self.coeffs.iter().map(Json::to_json).collect();
        json!({"position": self.position.to_json(), "coeffs": c})
    }

    fn from_json(v: &Value) -> Result<Self> {
        Ok(Generator {
            position: Coord::from_json(field(v, "position")?)?,
            coeffs: list(field(v, "coeffs")?, "coeffs")?,
        })
    }
}

impl Json for ExtDistance {
    fn to_json(&self) -> Value {
        match self {
            ExtDistance::Finite(c) => json!({ "finite": c.to_json() }),
            ExtDistance::Infinite => json!({ "infinite": true }),
        }
    }

    fn from_json(v: &Value) -> Result<Self> {
        if v.get("infinite").and_then(Value::as_bool) == Some(true) {
            return Ok(ExtDistance::Infinite);
        }
        Ok(ExtDistance::Finite(Coord::from_json(field(v, "finite")?)?))
    }
}

impl Json for Bracket {
    fn to_json(&self) -> Value {
        match self {
            Bracket::Finite { lower, upper } => {
                json!({"lower": lower.to_json(), "upper": upper.to_json()})
            }
            Bracket::Infinite => json!({ "infinite": true }),
        }
    }

    fn from_json(v: &Value) -> Result<Self> {
        if v.get("infinite").and_then(Value::as_bool) == Some(true) {
            return Ok(Bracket::Infinite);
        }
        Ok(Bracket::Finite {
            lower: Rational::from_json(field(v, "lower")?)?,
            upper: Rational::from_json(field(v, "upper")?)?,
        })
    }
}

/// Parses text as JSON, mapping syntax errors to malformed input.
pub fn parse(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::malformed(format!("invalid JSON: {e}")))
}

/// Compact rendering with object keys in sorted order.
pub fn render(v: &Value) -> String {
    sort_keys(v).to_string()
}

fn sort_keys(v: &Value) -> Value {
    match v {
        Value::Object(m) => {
            let mut keys: Vec<&String> = m.keys().collect();
            keys.sort();
            let mut out = Map::new();
            for k in keys {
                out.insert(k.clone(), sort_keys(&m[k]));
            }
            Value::Object(out)
        }
        Value::Array(a) => Value::Array(a.iter().map(sort_keys).collect()),
        other => other.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::IndexModel;

    #[test]
    fn scalar_round_trips() {
        let c = Coord::with_surd(Rational::new(1.into(), 2.into()), Rational::from_integer(3.into()), 8).unwrap();
        assert_eq!(Coord::from_json(&c.to_json()).unwrap(), c);
        assert_eq!(ExtCoord::from_json(&json!("inf")).unwrap(), ExtCoord::PlusInfinity);
        let p = DPoint::principal(Coord::frac(-3, 4));
        assert_eq!(render(&p.to_json()), r#"{"coord":"-3/4","flavor":"principal"}"#);
        assert_eq!(DPoint::from_json(&p.to_json()).unwrap(), p);
        assert!(matches!(DPoint::from_json(&json!({"coord": "0"})), Err(Error::Malformed(_))));
    }

    #[test]
    fn shorthand_intervals() {
        assert_eq!(parse_interval_shorthand("[0,1)").unwrap(), FpInterval::new(0, 1).unwrap());
        assert_eq!(
            parse_interval_shorthand("[ -1/2 , inf)").unwrap(),
            FpInterval::projective(Coord::frac(-1, 2))
        );
        assert!(matches!(parse_interval_shorthand("(0,1)"), Err(Error::Malformed(_))));
        assert!(matches!(parse_interval_shorthand("[1,0)"), Err(Error::Domain(_))));
    }

    #[test]
    fn structured_round_trips() {
        let m = ChainModule::new(vec![0, 2, 1], vec![Matrix::zeros(2, 0), Matrix::from_i64(&[&[1, -1]], 2)]).unwrap();
        assert_eq!(ChainModule::from_json(&m.to_json()).unwrap(), m);
        let s = Spectrum::new(IndexModel::dense()).unwrap();
        let u = s
            .set([DInterval::new(DEndpoint::BelowAll, DEndpoint::Excluded(DPoint::principal(2)))])
            .unwrap();
        assert_eq!(set_from_json(&u.to_json(), &s).unwrap(), u);
        let r = s.left_orthogonal(&u);
        assert_eq!(SerreRegion::from_json(&r.to_json()).unwrap(), r);
    }
}
