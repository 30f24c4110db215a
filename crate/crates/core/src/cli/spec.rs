use std::collections::BTreeMap;
use std::path::Path;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::expr::{Poly, Rational};
use crate::foliation::{BigradedForm, Chart};
use crate::hamiltonian::HamStructure;

use super::CliError;

/// A rational coordinate in a `points` entry: a JSON integer or a string such as `"-3/4"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Number {
    Int(i64),
    Text(String),
}

impl Number {
    fn to_rational(&self) -> Result<Rational, String> {
        match self {
            Number::Int(v) => Ok(Rational::from_integer((*v).into())),
            Number::Text(s) => s
                .trim()
                .parse::<Rational>()
                .map_err(|_| format!("'{s}' is not a rational number")),
        }
    }

    fn from_rational(r: &Rational) -> Self {
        if r.is_integer() {
            if let Ok(v) = r.to_integer().try_into() {
                return Number::Int(v);
            }
        }
        Number::Text(r.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChartBlock {
    pub q: usize,
    pub p: usize,
    pub transverse: Vec<String>,
    pub leaf: Vec<String>,
    /// `"u,a"` (one-based, `u` counted over all coordinates) to the expression `t^u_a`.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub t: BTreeMap<String, String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureBlock {
    #[serde(default)]
    pub h: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub k: BTreeMap<String, String>,
}

/// On-disk specification of a chart and a candidate structure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    pub chart: ChartBlock,
    #[serde(default)]
    pub structure: StructureBlock,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub points: Vec<Vec<Number>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub test_functions: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fundamental_form: Option<BTreeMap<String, String>>,
}

/// A validated specification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spec {
    pub name: Option<String>,
    pub description: Option<String>,
    pub structure: HamStructure,
    pub points: Vec<Vec<Rational>>,
    pub test_functions: Vec<Poly>,
    pub fundamental_form: Option<BigradedForm>,
}

fn schema(field: &str, msg: impl std::fmt::Display) -> CliError {
    CliError::Schema(format!("{field}: {msg}"))
}

fn parse_pair(field: &str, key: &str) -> Result<(usize, usize), CliError> {
    let parts: Vec<&str> = key.split(',').map(str::trim).collect();
    let [a, b] = parts[..] else {
        return Err(schema(field, format!("key '{key}' must have the form \"i,j\"")));
    };
    let num = |s: &str| match s.parse::<usize>() {
        Ok(v) if v >= 1 => Ok(v),
        _ => Err(schema(field, format!("key '{key}': indices are positive integers"))),
    };
    Ok((num(a)?, num(b)?))
}

fn parse_expr(chart: &Chart, field: &str, key: &str, text: &str) -> Result<Poly, CliError> {
    chart
        .parse(text)
        .map_err(|e| schema(&format!("{field}[\"{key}\"]"), format!("'{text}': {e}")))
}

impl SpecFile {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Schema(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec serialization cannot fail")
    }

    /// Parses and validates every block.
    pub fn build(&self) -> Result<Spec, CliError> {
        let cb = &self.chart;
        if cb.transverse.len() != cb.q {
            return Err(schema(
                "chart.transverse",
                format!("expected {} names, got {}", cb.q, cb.transverse.len()),
            ));
        }
        if cb.leaf.len() != cb.p {
            return Err(schema(
                "chart.leaf",
                format!("expected {} names, got {}", cb.p, cb.leaf.len()),
            ));
        }
        let (q, p) = (cb.q, cb.p);
        let flat = Chart::new(
            cb.transverse.clone(),
            cb.leaf.clone(),
            vec![vec![Poly::zero(q + p); p]; q],
        )?;
        let mut t = flat.t_matrix().to_vec();
        for (key, text) in &cb.t {
            let (u, a) = parse_pair("chart.t", key)?;
            if u <= q || u > q + p || a > q {
                return Err(schema("chart.t", format!("key '{key}' needs q < u <= n and a <= q")));
            }
            t[a - 1][u - q - 1] = parse_expr(&flat, "chart.t", key, text)?;
        }
        let chart = Chart::new(cb.transverse.clone(), cb.leaf.clone(), t)?;

        let mut h: Vec<Vec<Option<Poly>>> = vec![vec![None; q]; q];
        for (key, text) in &self.structure.h {
            let (a, b) = parse_pair("structure.h", key)?;
            if a > q || b > q || a == b {
                return Err(schema(
                    "structure.h",
                    format!("key '{key}' needs distinct indices <= q"),
                ));
            }
            let e = parse_expr(&chart, "structure.h", key, text)?;
            let (a, b) = (a - 1, b - 1);
            let neg = -&e;
            for (i, j, v) in [(a, b, e), (b, a, neg)] {
                match &h[i][j] {
                    Some(prev) if *prev != v => {
                        return Err(schema(
                            "structure.h",
                            format!(
                                "entries ({},{}) and ({},{}) are not skew symmetric",
                                a + 1,
                                b + 1,
                                b + 1,
                                a + 1
                            ),
                        ))
                    }
                    _ => h[i][j] = Some(v),
                }
            }
        }
        let h: Vec<Vec<Poly>> = h
            .into_iter()
            .map(|row| row.into_iter().map(|e| e.unwrap_or_else(|| chart.zero())).collect())
            .collect();
        let mut k = vec![vec![chart.zero(); p]; q];
        for (key, text) in &self.structure.k {
            let (a, u) = parse_pair("structure.k", key)?;
            if a > q || u <= q || u > q + p {
                return Err(schema("structure.k", format!("key '{key}' needs a <= q < u <= n")));
            }
            k[a - 1][u - q - 1] = parse_expr(&chart, "structure.k", key, text)?;
        }
        let structure = HamStructure::new(chart.clone(), h, k)?;

        let mut points = Vec::new();
        for (i, pt) in self.points.iter().enumerate() {
            if pt.len() != q + p {
                return Err(schema(
                    &format!("points[{i}]"),
                    format!("expected {} coordinates", q + p),
                ));
            }
            let v = pt
                .iter()
                .map(Number::to_rational)
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| schema(&format!("points[{i}]"), e))?;
            points.push(v);
        }
        let test_functions = self
            .test_functions
            .iter()
            .enumerate()
            .map(|(i, s)| {
                chart
                    .parse(s)
                    .map_err(|e| schema(&format!("test_functions[{i}]"), format!("'{s}': {e}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let fundamental_form = match &self.fundamental_form {
            None => None,
            Some(entries) => {
                let mut phi = BigradedForm::zero(q + p);
                for (key, text) in entries {
                    let (a, b) = parse_pair("fundamental_form", key)?;
                    if a > q || b > q || a == b {
                        return Err(schema(
                            "fundamental_form",
                            format!("key '{key}' needs distinct indices <= q"),
                        ));
                    }
                    phi.add_term(&[a - 1, b - 1], parse_expr(&chart, "fundamental_form", key, text)?);
                }
                Some(phi)
            }
        };
        Ok(Spec {
            name: self.name.clone(),
            description: self.description.clone(),
            structure,
            points,
            test_functions,
            fundamental_form,
        })
    }
}

impl Spec {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        SpecFile::from_json(text)?.build()
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        SpecFile::load(path)?.build()
    }

    pub fn chart(&self) -> &Chart {
        self.structure.chart()
    }

    /// Image-check points, defaulting to the origin.
    pub fn points_or_origin(&self) -> Vec<Vec<Rational>> {
        if self.points.is_empty() {
            vec![vec![Rational::zero(); self.chart().n()]]
        } else {
            self.points.clone()
        }
    }

    /// Canonical file form: nonzero entries only, `h` and `Φ` with `a < b`.
    pub fn to_spec_file(&self) -> SpecFile {
        let chart = self.chart();
        let (q, p) = (chart.q(), chart.p());
        let key = |i: usize, j: usize| format!("{},{}", i + 1, j + 1);
        let mut t = BTreeMap::new();
        let mut h = BTreeMap::new();
        let mut k = BTreeMap::new();
        for a in 0..q {
            for u in 0..p {
                if !chart.t(a, u).is_zero() {
                    t.insert(key(q + u, a), chart.format(chart.t(a, u)));
                }
                if !self.structure.k(a, u).is_zero() {
                    k.insert(key(a, q + u), chart.format(self.structure.k(a, u)));
                }
            }
            for b in a + 1..q {
                if !self.structure.h(a, b).is_zero() {
                    h.insert(key(a, b), chart.format(self.structure.h(a, b)));
                }
            }
        }
        let fundamental_form = self.fundamental_form.as_ref().map(|phi| {
            phi.terms()
                .filter(|(idx, c)| idx.len() == 2 && !c.is_zero())
                .map(|(idx, c)| (key(idx[0], idx[1]), chart.format(c)))
                .collect()
        });
        SpecFile {
            name: self.name.clone(),
            description: self.description.clone(),
            chart: ChartBlock {
                q,
                p,
                transverse: chart.transverse_names().to_vec(),
                leaf: chart.leaf_names().to_vec(),
                t,
            },
            structure: StructureBlock { h, k },
            points: self
                .points
                .iter()
                .map(|pt| pt.iter().map(Number::from_rational).collect())
                .collect(),
            test_functions: self.test_functions.iter().map(|f| chart.format(f)).collect(),
            fundamental_form,
        }
    }

    pub fn to_json(&self) -> String {
        self.to_spec_file().to_json()
    }
}
