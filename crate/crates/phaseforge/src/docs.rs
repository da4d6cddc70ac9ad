//! JSON documents read and written by the CLI.

use phaseforge_core::possys::{is_excitable, is_metzler, is_nonnegative, is_stable_matrix};
use phaseforge_core::xform::{Similarity, TransformResult};
use phaseforge_core::{ContPH, DiscPH, Kind, Matrix, PhaseType, Realization};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KindTag {
    Continuous,
    Discrete,
}

impl From<KindTag> for Kind {
    fn from(k: KindTag) -> Self {
        match k {
            KindTag::Continuous => Kind::Continuous,
            KindTag::Discrete => Kind::Discrete,
        }
    }
}

impl From<Kind> for KindTag {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Continuous => KindTag::Continuous,
            Kind::Discrete => KindTag::Discrete,
        }
    }
}

/// `{"kind": ..., "A": [[..]], "B": [..], "C": [..]}`
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RealizationDocument {
    pub kind: KindTag,
    #[serde(rename = "A")]
    pub a: Vec<Vec<f64>>,
    #[serde(rename = "B")]
    pub b: Vec<f64>,
    #[serde(rename = "C")]
    pub c: Vec<f64>,
}

/// Structural hypotheses of a realization document, before any transform.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Checks {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub metzler: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub nonneg: Option<bool>,
    pub excitable: bool,
    pub stable: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub order: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub exit_identity_residual: Option<f64>,
}

impl Checks {
    pub fn all_hold(&self) -> bool {
        self.metzler.unwrap_or(true) && self.nonneg.unwrap_or(true) && self.excitable && self.stable
    }
}

impl RealizationDocument {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let doc: RealizationDocument =
            serde_json::from_str(text).map_err(|e| CliError::Parse(format!("realization document: {e}")))?;
        doc.matrix()?;
        Ok(doc)
    }

    pub fn from_realization(r: &Realization) -> Self {
        RealizationDocument {
            kind: r.kind().into(),
            a: r.a().to_rows(),
            b: r.b().to_vec(),
            c: r.c().to_vec(),
        }
    }

    fn matrix(&self) -> Result<Matrix, CliError> {
        let n = self.a.len();
        if n == 0 {
            return Err(CliError::Parse("field A: must have at least one row".into()));
        }
        for (i, row) in self.a.iter().enumerate() {
            if row.len() != n {
                return Err(CliError::Parse(format!(
                    "field A: row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
        }
        for (name, v) in [("B", &self.b), ("C", &self.c)] {
            if v.len() != n {
                return Err(CliError::Parse(format!(
                    "field {name}: has {} entries, expected {n}",
                    v.len()
                )));
            }
        }
        Matrix::from_rows(&self.a).map_err(|e| CliError::Parse(format!("field A: {e}")))
    }

    pub fn checks(&self) -> Result<Checks, CliError> {
        let a = self.matrix()?;
        let kind: Kind = self.kind.into();
        let inputs_ok = self.b.iter().chain(&self.c).all(|&x| x >= -1e-9);
        let (metzler, nonneg, structural) = match kind {
            Kind::Continuous => {
                let m = is_metzler(&a) && inputs_ok;
                (Some(m), None, m)
            }
            Kind::Discrete => {
                let m = is_nonnegative(&a) && inputs_ok;
                (None, Some(m), m)
            }
        };
        Ok(Checks {
            metzler,
            nonneg,
            excitable: is_excitable(&a, &self.b),
            stable: structural && is_stable_matrix(kind, &a),
            order: Some(self.b.len()),
            exit_identity_residual: None,
        })
    }

    pub fn to_realization(&self) -> Result<Realization, CliError> {
        let a = self.matrix()?;
        Ok(Realization::new(self.kind.into(), a, self.b.clone(), self.c.clone())?)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimilarityDoc {
    #[serde(rename = "U", skip_serializing_if = "Option::is_none", default)]
    pub u: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub nu: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub eta: Option<f64>,
    #[serde(rename = "M", skip_serializing_if = "Option::is_none", default)]
    pub m: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub z: Option<Vec<f64>>,
}

/// Serialized [`TransformResult`]. Floats are written in shortest
/// round-trip form, so reading a document back reproduces every value bit for bit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TransformDocument {
    pub kind: KindTag,
    pub psi: f64,
    pub alpha_raw: Vec<f64>,
    pub alpha_star: Vec<f64>,
    #[serde(rename = "T")]
    pub t_mat: Vec<Vec<f64>>,
    pub t: Vec<f64>,
    pub similarity: SimilarityDoc,
    pub checks: Checks,
}

impl TransformDocument {
    pub fn from_result(tr: &TransformResult) -> Self {
        let similarity = match &tr.similarity {
            Similarity::Continuous { eta, nu, u } => SimilarityDoc {
                u: Some(u.clone()),
                nu: Some(nu.clone()),
                eta: Some(*eta),
                m: None,
                z: None,
            },
            Similarity::Discrete { z, m } => SimilarityDoc {
                u: None,
                nu: None,
                eta: None,
                m: Some(m.clone()),
                z: Some(z.clone()),
            },
        };
        let kind = tr.kind();
        TransformDocument {
            kind: kind.into(),
            psi: tr.psi,
            alpha_raw: tr.alpha_raw.clone(),
            alpha_star: tr.alpha_star().to_vec(),
            t_mat: tr.ph.matrix().to_rows(),
            t: tr.ph.exit().to_vec(),
            similarity,
            // a result only exists when every hypothesis held
            checks: Checks {
                metzler: (kind == Kind::Continuous).then_some(true),
                nonneg: (kind == Kind::Discrete).then_some(true),
                excitable: true,
                stable: true,
                order: None,
                exit_identity_residual: Some(tr.exit_identity_residual),
            },
        }
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Parse(format!("transform document: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("transform document serializes")
    }

    /// Rebuilds the transform, re-validating the distribution.
    pub fn to_result(&self) -> Result<TransformResult, CliError> {
        let t = Matrix::from_rows(&self.t_mat).map_err(|e| CliError::Parse(format!("field T: {e}")))?;
        let kind: Kind = self.kind.into();
        let ph: PhaseType = match kind {
            Kind::Continuous => ContPH::new(self.alpha_star.clone(), t, self.t.clone())?.into(),
            Kind::Discrete => DiscPH::new(self.alpha_star.clone(), t, self.t.clone())?.into(),
        };
        let missing = |f: &str| CliError::Parse(format!("similarity: missing field {f}"));
        let similarity = match kind {
            Kind::Continuous => Similarity::Continuous {
                eta: self.similarity.eta.ok_or_else(|| missing("eta"))?,
                nu: self.similarity.nu.clone().ok_or_else(|| missing("nu"))?,
                u: self.similarity.u.clone().ok_or_else(|| missing("U"))?,
            },
            Kind::Discrete => Similarity::Discrete {
                z: self.similarity.z.clone().ok_or_else(|| missing("z"))?,
                m: self.similarity.m.clone().ok_or_else(|| missing("M"))?,
            },
        };
        Ok(TransformResult {
            similarity,
            alpha_raw: self.alpha_raw.clone(),
            psi: self.psi,
            ph,
            exit_identity_residual: self.checks.exit_identity_residual.unwrap_or(0.0),
        })
    }

    /// Flat `key,value` rows.
    pub fn to_csv(&self) -> String {
        use crate::format::csv_number as f;
        let mut out = String::from("key,value\n");
        let mut push = |k: String, v: f64| {
            out.push_str(&k);
            out.push(',');
            out.push_str(&f(v));
            out.push('\n');
        };
        push("psi".into(), self.psi);
        let vectors = [
            ("alpha_raw", Some(&self.alpha_raw)),
            ("alpha_star", Some(&self.alpha_star)),
            ("t", Some(&self.t)),
            ("U", self.similarity.u.as_ref()),
            ("nu", self.similarity.nu.as_ref()),
            ("M", self.similarity.m.as_ref()),
            ("z", self.similarity.z.as_ref()),
        ];
        for (name, v) in vectors {
            for (i, x) in v.into_iter().flatten().enumerate() {
                push(format!("{name}[{i}]"), *x);
            }
        }
        for (i, row) in self.t_mat.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                push(format!("T[{i},{j}]"), *x);
            }
        }
        out
    }
}
