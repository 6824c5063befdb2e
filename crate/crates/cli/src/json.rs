//! JSON documents for every value the command line reads or prints.
//!
//! Key order is fixed by construction so output is byte-stable.

use std::collections::BTreeMap;

use holonomica::arith::{Field, GaussRat, Poly, Rat, RatFunc};
use holonomica::denef::{DenefWitness, VerifyReport};
use holonomica::holonomic::{
    BoundaryRelation, InitialData, OdeAnnihilator, Recurrence, SeriesCheck,
};
use holonomica::lacunary::{PolynomialityCertificate, SupportProfile, Verdict};
use holonomica::pell::{EntirePellData, PellWitness};
use holonomica::quad::{QuadElem, QuadMode};
use holonomica::series::TruncSeries;
use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use crate::error::CliError;
use crate::text;

/// Reader with the degree cap applied to every parsed polynomial.
#[derive(Clone, Copy, Debug)]
pub struct Reader {
    pub max_degree: usize,
}

fn malformed<T>(what: &str, v: &Value) -> Result<T, CliError> {
    Err(CliError::malformed(format!("expected {what}, got {v}")))
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value, CliError> {
    v.get(key)
        .ok_or_else(|| CliError::malformed(format!("missing key {key:?} in {v}")))
}

fn as_u64(v: &Value, what: &str) -> Result<u64, CliError> {
    v.as_u64().map_or_else(|| malformed(what, v), Ok)
}

fn as_i64(v: &Value, what: &str) -> Result<i64, CliError> {
    v.as_i64().map_or_else(|| malformed(what, v), Ok)
}

fn as_array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>, CliError> {
    v.as_array().map_or_else(|| malformed(what, v), Ok)
}

pub fn gauss_value(v: &Value) -> Result<GaussRat, CliError> {
    match v {
        Value::String(s) => text::parse_gauss(s),
        Value::Number(n) => match n.as_i64() {
            Some(i) => Ok(GaussRat::from(Rat::from_integer(BigInt::from(i)))),
            None => malformed("an integer or a coefficient string", v),
        },
        _ => malformed("a coefficient", v),
    }
}

pub fn rat_value(v: &Value) -> Result<Rat, CliError> {
    let g = gauss_value(v)?;
    if !g.im.is_zero() {
        return malformed("a rational coefficient", v);
    }
    Ok(g.re)
}

fn exponent(v: &Value) -> Result<usize, CliError> {
    let e = as_u64(v, "a nonnegative exponent")?;
    usize::try_from(e).map_err(|_| CliError::malformed("exponent too large"))
}

impl Reader {
    fn check_degree<C: Field>(&self, p: &Poly<C>) -> Result<(), CliError> {
        match p.degree() {
            Some(d) if d > self.max_degree => Err(CliError::precondition(format!(
                "degree {d} exceeds HOLONOMICA_MAX_DEGREE = {}",
                self.max_degree
            ))),
            _ => Ok(()),
        }
    }

    /// Text, `{"coeffs": [[e, "c"], …]}` or a dense list of coefficients.
    pub fn gauss_poly(&self, v: &Value, var: &str) -> Result<Poly<GaussRat>, CliError> {
        let p = match v {
            Value::String(s) => return text::parse_gauss_poly(s, var, self.max_degree),
            Value::Object(_) => {
                let mut terms = Vec::new();
                for t in as_array(
                    field(v, "coeffs")?,
                    "a list of [exponent, coefficient] pairs",
                )? {
                    let pair = as_array(t, "an [exponent, coefficient] pair")?;
                    if pair.len() != 2 {
                        return malformed("an [exponent, coefficient] pair", t);
                    }
                    terms.push((exponent(&pair[0])?, gauss_value(&pair[1])?));
                }
                Poly::from_terms(terms)
            }
            Value::Array(items) => {
                if items.len() > self.max_degree.saturating_add(1) {
                    return Err(CliError::precondition(
                        "coefficient list exceeds HOLONOMICA_MAX_DEGREE",
                    ));
                }
                Poly::from_dense(items.iter().map(gauss_value).collect::<Result<_, _>>()?)
            }
            Value::Number(_) => Poly::constant(gauss_value(v)?),
            _ => return malformed("a polynomial", v),
        };
        self.check_degree(&p)?;
        Ok(p)
    }

    pub fn poly(&self, v: &Value, var: &str) -> Result<Poly, CliError> {
        let g = self.gauss_poly(v, var)?;
        let (re, im) = g.re_im();
        if !im.is_zero() {
            return malformed("a polynomial with rational coefficients", v);
        }
        Ok(re)
    }

    /// `{"num": …, "den": …}` or a polynomial.
    pub fn ratfunc(&self, v: &Value) -> Result<RatFunc, CliError> {
        match v.get("num") {
            Some(num) => {
                let den = match v.get("den") {
                    Some(d) => self.poly(d, "z")?,
                    None => Poly::one(),
                };
                Ok(RatFunc::new(self.poly(num, "z")?, den)?)
            }
            None => Ok(self.poly(v, "z")?.into()),
        }
    }

    /// `{"a": …, "b": …, "mode": "poly" | "ratfunc"}`.
    pub fn quad(&self, v: &Value) -> Result<QuadElem, CliError> {
        let a = self.ratfunc(field(v, "a")?)?;
        let b = match v.get("b") {
            Some(b) => self.ratfunc(b)?,
            None => RatFunc::zero(),
        };
        let mode = match v.get("mode").and_then(Value::as_str) {
            None if a.is_polynomial() && b.is_polynomial() => QuadMode::Poly,
            None | Some("ratfunc") => QuadMode::RatFunc,
            Some("poly") => QuadMode::Poly,
            Some(_) => return malformed("mode \"poly\" or \"ratfunc\"", v),
        };
        Ok(QuadElem::new(a, b, mode)?)
    }

    /// `{"order": k, "P": [P_0, …, P_k], "zero_function": bool}`.
    pub fn ode(&self, v: &Value) -> Result<OdeAnnihilator, CliError> {
        if v.get("zero_function").and_then(Value::as_bool) == Some(true) {
            return Ok(OdeAnnihilator::zero_function());
        }
        let polys = as_array(field(v, "P")?, "a list of coefficient polynomials")?;
        if let Some(k) = v.get("order") {
            if as_u64(k, "an order")? as usize + 1 != polys.len() {
                return malformed("\"order\" equal to len(P) - 1", v);
            }
        }
        let coeffs = polys
            .iter()
            .map(|p| self.poly(p, "z"))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(OdeAnnihilator::new(coeffs)?)
    }

    /// `{"order": k, "p": [p_0, …, p_k], "boundary": [{"at": m, "terms": [[j, "c"], …]}]}`.
    pub fn recurrence(&self, v: &Value) -> Result<Recurrence, CliError> {
        let polys = as_array(field(v, "p")?, "a list of coefficient polynomials in n")?;
        if let Some(k) = v.get("order") {
            if as_u64(k, "an order")? as usize + 1 != polys.len() {
                return malformed("\"order\" equal to len(p) - 1", v);
            }
        }
        let coeffs = polys
            .iter()
            .map(|p| self.poly(p, "n"))
            .collect::<Result<Vec<_>, _>>()?;
        let mut boundary = Vec::new();
        if let Some(b) = v.get("boundary") {
            for rel in as_array(b, "a list of boundary relations")? {
                let at = as_i64(field(rel, "at")?, "an index")?;
                let mut terms = Vec::new();
                for t in as_array(field(rel, "terms")?, "a list of [index, coefficient] pairs")? {
                    let pair = as_array(t, "an [index, coefficient] pair")?;
                    if pair.len() != 2 {
                        return malformed("an [index, coefficient] pair", t);
                    }
                    terms.push((exponent(&pair[0])?, rat_value(&pair[1])?));
                }
                boundary.push(BoundaryRelation { at, terms });
            }
        }
        Ok(Recurrence::with_boundary(coeffs, boundary)?)
    }

    /// `{"T": T, "a": [a_0, …]}`, or a polynomial expanded to `order`.
    pub fn series(&self, v: &Value, order: usize) -> Result<TruncSeries, CliError> {
        if let Some(a) = v.get("a") {
            let coeffs = as_array(a, "a list of coefficients")?
                .iter()
                .map(gauss_value)
                .collect::<Result<Vec<_>, _>>()?;
            if let Some(t) = v.get("T") {
                if as_u64(t, "a truncation order")? as usize != coeffs.len() {
                    return malformed("\"T\" equal to the number of coefficients", v);
                }
            }
            let s = TruncSeries::new(coeffs);
            let t = s.order().min(order);
            return Ok(s.truncate(t));
        }
        Ok(TruncSeries::from_poly(&self.gauss_poly(v, "z")?, order))
    }

    /// A list of values, or `{"values": […], "supplied": {"index": value}}`.
    pub fn initial(&self, v: &Value) -> Result<InitialData<GaussRat>, CliError> {
        let (values, supplied) = match v {
            Value::Array(_) => (v, None),
            Value::Object(_) => (field(v, "values")?, v.get("supplied")),
            _ => return malformed("initial data", v),
        };
        let values = as_array(values, "a list of initial values")?
            .iter()
            .map(gauss_value)
            .collect::<Result<Vec<_>, _>>()?;
        let mut init = InitialData::new(values);
        match supplied {
            None | Some(Value::Null) => {}
            Some(Value::Object(m)) => {
                for (k, val) in m {
                    let idx: usize = k
                        .parse()
                        .map_err(|_| CliError::malformed(format!("bad index {k:?}")))?;
                    init.supplied.insert(idx, gauss_value(val)?);
                }
            }
            Some(Value::Array(items)) => {
                for t in items {
                    let pair = as_array(t, "an [index, value] pair")?;
                    if pair.len() != 2 {
                        return malformed("an [index, value] pair", t);
                    }
                    init.supplied
                        .insert(exponent(&pair[0])?, gauss_value(&pair[1])?);
                }
            }
            Some(other) => return malformed("supplied terms", other),
        }
        Ok(init)
    }

    /// `{"epsilon": ±1, "n": n, "x": …, "y": …}`; `n` and `epsilon` are optional.
    pub fn pell_pair(&self, v: &Value) -> Result<(Poly, Poly), CliError> {
        let x = v.get("x").or_else(|| v.get("f"));
        let y = v.get("y").or_else(|| v.get("g"));
        match (x, y) {
            (Some(x), Some(y)) => Ok((self.poly(x, "z")?, self.poly(y, "z")?)),
            _ => malformed("an object with keys \"x\" and \"y\"", v),
        }
    }

    pub fn pell_witness(&self, v: &Value) -> Result<PellWitness, CliError> {
        let (x, y) = self.pell_pair(v)?;
        let epsilon = as_i64(field(v, "epsilon")?, "epsilon")?;
        let epsilon =
            i8::try_from(epsilon).map_err(|_| CliError::malformed("epsilon must be 1 or -1"))?;
        Ok(PellWitness {
            epsilon,
            n: as_i64(field(v, "n")?, "an integer n")?,
            x,
            y,
        })
    }

    /// `{"t": t, "pell": …, "f": …}`; other keys are ignored.
    pub fn denef_witness(&self, v: &Value) -> Result<DenefWitness, CliError> {
        Ok(DenefWitness {
            t: as_i64(field(v, "t")?, "an integer t")?,
            pell: self.pell_witness(field(v, "pell")?)?,
            f: self.poly(field(v, "f")?, "z")?,
        })
    }

    /// `{"exponents": […], "horizon": H | null}`, `{"self_powers": H}`,
    /// `{"full": H}` or a polynomial.
    pub fn profile(&self, v: &Value) -> Result<SupportProfile, CliError> {
        if let Some(h) = v.get("self_powers") {
            return Ok(SupportProfile::self_powers(as_u64(h, "a horizon")?));
        }
        if let Some(h) = v.get("full") {
            let h = as_u64(h, "a horizon")?;
            if h > self.max_degree as u64 {
                return Err(CliError::precondition(
                    "full support horizon exceeds HOLONOMICA_MAX_DEGREE",
                ));
            }
            return Ok(SupportProfile::full(h));
        }
        if let Some(e) = v.get("exponents") {
            let exps = as_array(e, "a list of exponents")?
                .iter()
                .map(|x| as_u64(x, "an exponent"))
                .collect::<Result<Vec<_>, _>>()?;
            let horizon = match v.get("horizon") {
                None | Some(Value::Null) => None,
                Some(h) => Some(as_u64(h, "a horizon")?),
            };
            return Ok(SupportProfile::new(exps, horizon)?);
        }
        Ok(SupportProfile::of_poly(&self.gauss_poly(v, "z")?))
    }
}

pub fn coeff_json<C: Field>(c: &C) -> Value {
    Value::String(c.to_string())
}

pub fn poly_json<C: Field>(p: &Poly<C>, var: &str) -> Value {
    let coeffs: Vec<Value> = p
        .terms()
        .iter()
        .map(|(e, c)| json!([e, coeff_json(c)]))
        .collect();
    json!({ "coeffs": coeffs, "text": p.display(var).to_string() })
}

pub fn ratfunc_json(f: &RatFunc) -> Value {
    json!({ "num": poly_json(f.num(), "z"), "den": poly_json(f.den(), "z") })
}

pub fn quad_json(u: &QuadElem) -> Value {
    let mode = match u.mode() {
        QuadMode::Poly => "poly",
        QuadMode::RatFunc => "ratfunc",
    };
    json!({ "a": ratfunc_json(u.a()), "b": ratfunc_json(u.b()), "mode": mode })
}

pub fn ode_json<C: Field>(o: &OdeAnnihilator<C>) -> Value {
    let p: Vec<Value> = o.coeffs().iter().map(|c| poly_json(c, "z")).collect();
    json!({ "order": o.order(), "P": p, "zero_function": o.is_zero_function(), "text": o.to_string() })
}

pub fn recurrence_json<C: Field>(r: &Recurrence<C>) -> Value {
    let p: Vec<Value> = r.coeffs().iter().map(|c| poly_json(c, "n")).collect();
    let boundary: Vec<Value> = r
        .boundary()
        .iter()
        .map(|b| {
            let terms: Vec<Value> = b
                .terms
                .iter()
                .map(|(j, c)| json!([j, coeff_json(c)]))
                .collect();
            json!({ "at": b.at, "terms": terms })
        })
        .collect();
    json!({ "order": r.order(), "p": p, "boundary": boundary, "text": r.to_string() })
}

pub fn series_json(s: &TruncSeries) -> Value {
    let a: Vec<Value> = s.coeffs().iter().map(coeff_json).collect();
    json!({ "T": s.order(), "a": a })
}

pub fn values_json<C: Field>(values: &[C]) -> Value {
    Value::Array(values.iter().map(coeff_json).collect())
}

pub fn check_json(c: &SeriesCheck) -> Value {
    json!({ "ok": c.passed(), "window": c.window, "first_mismatch": c.first_mismatch })
}

pub fn pell_witness_json(w: &PellWitness) -> Value {
    json!({ "epsilon": w.epsilon, "n": w.n, "x": poly_json(&w.x, "z"), "y": poly_json(&w.y, "z") })
}

pub fn entire_json(d: &EntirePellData) -> Value {
    let phase = match &d.phase {
        None => Value::Null,
        Some(p) => json!({
            "theta": coeff_json(&p.theta),
            "f_sin": series_json(&p.f_sin),
            "g_sin": series_json(&p.g_sin),
        }),
    };
    json!({
        "epsilon": d.epsilon,
        "n": d.n,
        "h": poly_json(&d.h, "z"),
        "T": d.order,
        "f": series_json(&d.f),
        "g": series_json(&d.g),
        "phase": phase,
    })
}

pub fn denef_json(w: &DenefWitness, transcript: &[String]) -> Value {
    json!({
        "t": w.t,
        "pell": pell_witness_json(&w.pell),
        "f": poly_json(&w.f, "z"),
        "transcript": transcript,
    })
}

pub fn verify_report_json(r: &VerifyReport, transcript: &[String]) -> Value {
    let reasons: Vec<String> = r.reasons.iter().map(ToString::to_string).collect();
    json!({ "ok": r.ok, "reasons": reasons, "transcript": transcript })
}

pub fn profile_json(p: &SupportProfile) -> Value {
    json!({ "exponents": p.exponents(), "horizon": p.horizon() })
}

pub fn certificate_json(c: &PolynomialityCertificate) -> Value {
    let (verdict, degree) = match &c.verdict {
        Verdict::Polynomial { degree } => ("POLYNOMIAL", json!(degree)),
        Verdict::NoCertificate { .. } => ("NO_CERTIFICATE", Value::Null),
    };
    json!({
        "verdict": verdict,
        "degree": degree,
        "m": c.window_start,
        "B": c.bound,
        "H": c.horizon,
        "text": c.to_string(),
    })
}

/// Map with sorted string keys, for `supplied` terms.
pub fn supplied_json<C: Field>(m: &BTreeMap<usize, C>) -> Value {
    let mut out = Map::new();
    for (k, v) in m {
        out.insert(k.to_string(), coeff_json(v));
    }
    Value::Object(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use holonomica::holonomic::ode_to_recurrence;
    use holonomica::pell::pell_general_solution;

    const R: Reader = Reader { max_degree: 10_000 };

    #[test]
    fn poly_round_trip() {
        let p = Poly::from_ints(&[-1, 0, 2]);
        let doc = poly_json(&p, "z");
        assert_eq!(doc["text"], "-1 + 2*z^2");
        assert_eq!(R.poly(&doc, "z").unwrap(), p);
        assert_eq!(R.poly(&json!("2*z^2 - 1"), "z").unwrap(), p);
        assert_eq!(R.poly(&json!(["-1", 0, "2"]), "z").unwrap(), p);
    }

    #[test]
    fn ode_and_recurrence_round_trip() {
        let airy = OdeAnnihilator::new(vec![Poly::from_ints(&[0, -1]), Poly::zero(), Poly::one()])
            .unwrap();
        let doc = ode_json(&airy);
        assert_eq!(R.ode(&doc).unwrap(), airy);
        assert_eq!(ode_json(&R.ode(&doc).unwrap()), doc);
        let rec = ode_to_recurrence(&airy);
        let doc = recurrence_json(&rec);
        assert_eq!(R.recurrence(&doc).unwrap(), rec);
        assert_eq!(recurrence_json(&R.recurrence(&doc).unwrap()), doc);
        let z = ode_json(&OdeAnnihilator::<Rat>::zero_function());
        assert!(R.ode(&z).unwrap().is_zero_function());
    }

    #[test]
    fn series_round_trip() {
        let d = pell_general_solution(1, 2, &Poly::from_ints(&[1, 1]), 12).unwrap();
        let doc = entire_json(&d);
        let f = R.series(&doc["f"], 120).unwrap();
        assert_eq!(f, d.f);
        assert_eq!(series_json(&f), doc["f"]);
    }

    #[test]
    fn quad_round_trip() {
        let u = QuadElem::fundamental_unit();
        let doc = quad_json(&u);
        assert_eq!(R.quad(&doc).unwrap(), u);
        let v = R.quad(&json!({"a": "z", "b": "1"})).unwrap();
        assert_eq!(v, u);
    }

    #[test]
    fn degree_cap() {
        let small = Reader { max_degree: 3 };
        assert!(small.poly(&json!({"coeffs": [[4, "1"]]}), "z").is_err());
        assert!(small.poly(&json!("z^4"), "z").is_err());
    }
}
