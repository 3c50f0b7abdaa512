//! JSON persistence for realizations. Every scalar is stored as four
//! decimal strings, so documents are exact and round-trip byte for byte.

use std::str::FromStr;

use pencilforge::realize::{Pencil, Realization};
use pencilforge::{Matrix, SymmetryFlags, GR};
use serde::{Deserialize, Serialize};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, thiserror::Error)]
pub enum DocumentError {
    #[error("invalid pencil document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid pencil document: {0}")]
    Invalid(String),
}

fn invalid(msg: impl Into<String>) -> DocumentError {
    DocumentError::Invalid(msg.into())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scalar {
    pub re_num: String,
    pub re_den: String,
    pub im_num: String,
    pub im_den: String,
}

impl Scalar {
    pub fn from_gr(v: &GR) -> Self {
        let (re_num, re_den, im_num, im_den) = v.to_parts();
        Self { re_num, re_den, im_num, im_den }
    }

    /// Rejects strings that are not already in lowest terms with a positive
    /// denominator.
    pub fn to_gr(&self) -> Result<GR, DocumentError> {
        let part = |n: &str, d: &str| {
            GR::from_str(&format!("{n}/{d}")).map_err(|_| invalid(format!("bad rational {n}/{d}")))
        };
        let v = GR::complex(part(&self.re_num, &self.re_den)?, part(&self.im_num, &self.im_den)?);
        if Scalar::from_gr(&v) != *self {
            return Err(invalid(format!(
                "non-canonical scalar {}/{} + {}/{}i",
                self.re_num, self.re_den, self.im_num, self.im_den
            )));
        }
        Ok(v)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Flags {
    pub real: bool,
    pub symmetric: bool,
    pub hermitian: bool,
    pub homogeneous: bool,
}

impl From<SymmetryFlags> for Flags {
    fn from(f: SymmetryFlags) -> Self {
        Self { real: f.real, symmetric: f.symmetric, hermitian: f.hermitian, homogeneous: f.homogeneous }
    }
}

impl From<Flags> for SymmetryFlags {
    fn from(f: Flags) -> Self {
        Self { real: f.real, symmetric: f.symmetric, hermitian: f.hermitian, homogeneous: f.homogeneous }
    }
}

/// Field order here is the canonical order on disk.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PencilDocument {
    pub format_version: u32,
    pub nvars: usize,
    pub side: usize,
    pub split: usize,
    pub variables: Vec<String>,
    pub flags: Flags,
    /// `A₀, A₁, …, Aₙ`, each as rows of scalars.
    pub coefficients: Vec<Vec<Vec<Scalar>>>,
    pub provenance: Vec<String>,
    pub certificate: Option<Vec<Scalar>>,
}

impl PencilDocument {
    pub fn from_realization(r: &Realization, variables: &[String]) -> Self {
        let side = r.side();
        let coefficients = r
            .pencil
            .coeffs()
            .iter()
            .map(|m| (0..side).map(|i| m.row(i).iter().map(Scalar::from_gr).collect()).collect())
            .collect();
        Self {
            format_version: FORMAT_VERSION,
            nvars: r.nvars(),
            side,
            split: r.split,
            variables: variables.to_vec(),
            flags: r.flags.into(),
            coefficients,
            provenance: r.provenance.clone(),
            certificate: r.certificate.as_ref().map(|c| c.iter().map(Scalar::from_gr).collect()),
        }
    }

    pub fn to_realization(&self) -> Result<Realization, DocumentError> {
        if self.format_version != FORMAT_VERSION {
            return Err(invalid(format!("unsupported format version {}", self.format_version)));
        }
        if self.variables.len() != self.nvars {
            return Err(invalid(format!("{} variable names for {} variables", self.variables.len(), self.nvars)));
        }
        if self.coefficients.len() != self.nvars + 1 {
            return Err(invalid(format!("{} coefficients for {} variables", self.coefficients.len(), self.nvars)));
        }
        let mut coeffs = Vec::with_capacity(self.coefficients.len());
        for (slot, rows) in self.coefficients.iter().enumerate() {
            if rows.len() != self.side || rows.iter().any(|r| r.len() != self.side) {
                return Err(invalid(format!("coefficient {slot} is not {0}x{0}", self.side)));
            }
            let vals = rows.iter().flatten().map(Scalar::to_gr).collect::<Result<Vec<_>, _>>()?;
            coeffs.push(Matrix::from_vec(self.side, self.side, vals).map_err(|e| invalid(e.to_string()))?);
        }
        let pencil = Pencil::new(coeffs).map_err(|e| invalid(e.to_string()))?;
        let mut r = Realization::new(pencil, self.split, "").map_err(|e| invalid(e.to_string()))?;
        r.provenance = self.provenance.clone();
        r.flags = self.flags.into();
        r.certificate = match &self.certificate {
            None => None,
            Some(c) if c.len() == self.nvars => Some(c.iter().map(Scalar::to_gr).collect::<Result<_, _>>()?),
            Some(c) => return Err(invalid(format!("certificate has {} coordinates", c.len()))),
        };
        Ok(r)
    }

    pub fn from_json(text: &str) -> Result<Self, DocumentError> {
        let doc: Self = serde_json::from_str(text)?;
        doc.to_realization()?;
        Ok(doc)
    }

    /// Pretty-printed JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents always serialize");
        s.push('\n');
        s
    }
}
