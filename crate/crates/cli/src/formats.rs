//! JSON file formats. Field elements are plain integers, GF(2) matrices are
//! rows of 0/1.

use rankgpt_core::field::{Elem, Field};
use rankgpt_core::gpt::{DistortionRecord, GptParams, GptPrivateKey, GptPublicKey, XMode};
use rankgpt_core::matrix::{BaseMatrix, ExtMatrix};
use rankgpt_core::overbeck::SecurityReport;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamsFile {
    #[serde(rename = "N")]
    pub degree: u32,
    pub primitive_poly: u64,
    pub n: usize,
    pub k: usize,
    pub t1: usize,
    pub a: usize,
    pub t2_max: usize,
    pub x_mode: String,
}

impl ParamsFile {
    pub fn new(field: &Field, params: &GptParams) -> ParamsFile {
        ParamsFile {
            degree: params.degree,
            primitive_poly: field.modulus(),
            n: params.n,
            k: params.k,
            t1: params.t1,
            a: params.a,
            t2_max: params.t2_max,
            x_mode: params.x_mode.name().to_string(),
        }
    }

    pub fn to_core(&self) -> Result<(Field, GptParams), CliError> {
        let field = Field::new(self.degree, self.primitive_poly).map_err(|e| CliError::malformed("params", e))?;
        let x_mode: XMode = self.x_mode.parse().map_err(|e| CliError::malformed("params", e))?;
        let params = GptParams {
            degree: self.degree,
            n: self.n,
            k: self.k,
            t1: self.t1,
            a: self.a,
            t2_max: self.t2_max,
            x_mode,
        };
        params.validate().map_err(|e| CliError::malformed("params", e))?;
        Ok((field, params))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum XRecordFile {
    SmartSimple {
        seed_row: Vec<u64>,
        offsets: Vec<Vec<u8>>,
    },
    SmartGeneral {
        frobenius_seeds: Vec<u64>,
        free_columns: Vec<Vec<u64>>,
        mixing: Vec<Vec<u8>>,
    },
    Kshevetskiy {
        left: Vec<Vec<u64>>,
        right: Vec<Vec<u64>>,
    },
    RandomNaive {
        x: Vec<Vec<u64>>,
    },
}

impl XRecordFile {
    pub fn new(record: &DistortionRecord) -> XRecordFile {
        match record {
            DistortionRecord::SmartSimple { seed_row, offsets } => XRecordFile::SmartSimple {
                seed_row: values(seed_row),
                offsets: base_rows(offsets),
            },
            DistortionRecord::SmartGeneral {
                frobenius_seeds,
                free_columns,
                mixing,
            } => XRecordFile::SmartGeneral {
                frobenius_seeds: values(frobenius_seeds),
                free_columns: ext_rows(free_columns),
                mixing: base_rows(mixing),
            },
            DistortionRecord::Kshevetskiy { left, right } => XRecordFile::Kshevetskiy {
                left: ext_rows(left),
                right: ext_rows(right),
            },
            DistortionRecord::RandomNaive { x } => XRecordFile::RandomNaive { x: ext_rows(x) },
        }
    }

    pub fn to_core(&self, field: &Field) -> Result<DistortionRecord, CliError> {
        const WHAT: &str = "x_record";
        Ok(match self {
            XRecordFile::SmartSimple { seed_row, offsets } => DistortionRecord::SmartSimple {
                seed_row: elems(field, seed_row, WHAT)?,
                offsets: base_matrix(offsets, WHAT)?,
            },
            XRecordFile::SmartGeneral {
                frobenius_seeds,
                free_columns,
                mixing,
            } => DistortionRecord::SmartGeneral {
                frobenius_seeds: elems(field, frobenius_seeds, WHAT)?,
                free_columns: ext_matrix(field, free_columns, WHAT)?,
                mixing: base_matrix(mixing, WHAT)?,
            },
            XRecordFile::Kshevetskiy { left, right } => DistortionRecord::Kshevetskiy {
                left: ext_matrix(field, left, WHAT)?,
                right: ext_matrix(field, right, WHAT)?,
            },
            XRecordFile::RandomNaive { x } => DistortionRecord::RandomNaive {
                x: ext_matrix(field, x, WHAT)?,
            },
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PublicKeyFile {
    pub params: ParamsFile,
    pub seed: u64,
    pub g_pub: Vec<Vec<u64>>,
}

impl PublicKeyFile {
    pub fn new(key: &GptPublicKey, seed: u64) -> PublicKeyFile {
        PublicKeyFile {
            params: ParamsFile::new(key.field(), key.params()),
            seed,
            g_pub: ext_rows(key.generator()),
        }
    }

    pub fn to_core(&self) -> Result<GptPublicKey, CliError> {
        let (field, params) = self.params.to_core()?;
        let g_pub = ext_matrix(&field, &self.g_pub, "public key")?;
        GptPublicKey::from_parts(field, params, g_pub).map_err(|e| CliError::malformed("public key", e))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrivateKeyFile {
    pub params: ParamsFile,
    pub seed: u64,
    pub g: Vec<u64>,
    #[serde(rename = "S")]
    pub s: Vec<Vec<u64>>,
    #[serde(rename = "P")]
    pub p: Vec<Vec<u8>>,
    pub x_record: Option<XRecordFile>,
}

impl PrivateKeyFile {
    pub fn new(key: &GptPrivateKey, seed: u64) -> PrivateKeyFile {
        PrivateKeyFile {
            params: ParamsFile::new(key.field(), key.params()),
            seed,
            g: values(key.code().support()),
            s: ext_rows(key.row_scrambler()),
            p: base_rows(key.column_scrambler()),
            x_record: key.distortion_record().map(XRecordFile::new),
        }
    }

    pub fn to_core(&self) -> Result<GptPrivateKey, CliError> {
        const WHAT: &str = "private key";
        let (field, params) = self.params.to_core()?;
        let record = self.x_record.as_ref().map(|r| r.to_core(&field)).transpose()?;
        GptPrivateKey::from_parts(
            field,
            params,
            elems(&field, &self.g, WHAT)?,
            ext_matrix(&field, &self.s, WHAT)?,
            base_matrix(&self.p, WHAT)?,
            record,
        )
        .map_err(|e| CliError::malformed(WHAT, e))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CiphertextFile {
    pub params: ParamsFile,
    pub seed: u64,
    /// Each block holds `n + t1` field elements.
    pub blocks: Vec<Vec<u64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportFile {
    /// Absent when only the public key was audited.
    pub rk_y_ext: Option<usize>,
    pub a_effective: usize,
    pub kernel_dim: usize,
    pub public_column_rank: usize,
    pub work_factor_log2: f64,
    pub secure: bool,
    pub distinguisher_succeeds: bool,
    pub params: ParamsFile,
    pub seed: u64,
}

impl ReportFile {
    pub fn from_report(field: &Field, report: &SecurityReport, seed: u64) -> ReportFile {
        ReportFile {
            rk_y_ext: Some(report.rk_y_ext),
            a_effective: report.a_effective,
            kernel_dim: report.kernel_dim,
            public_column_rank: report.public_column_rank,
            work_factor_log2: report.work_factor_log2,
            secure: report.secure,
            distinguisher_succeeds: report.kernel_dim == 1,
            params: ParamsFile::new(field, &report.params),
            seed,
        }
    }
}

pub fn values(v: &[Elem]) -> Vec<u64> {
    v.iter().map(|e| e.value()).collect()
}

pub fn elems(field: &Field, v: &[u64], what: &'static str) -> Result<Vec<Elem>, CliError> {
    v.iter().map(|&x| field.elem(x).map_err(|e| CliError::malformed(what, e))).collect()
}

pub fn ext_rows(m: &ExtMatrix) -> Vec<Vec<u64>> {
    m.to_rows().iter().map(|r| values(r)).collect()
}

pub fn ext_matrix(field: &Field, rows: &[Vec<u64>], what: &'static str) -> Result<ExtMatrix, CliError> {
    let rows = rows.iter().map(|r| elems(field, r, what)).collect::<Result<Vec<_>, _>>()?;
    ExtMatrix::from_rows(&rows).map_err(|e| CliError::malformed(what, e))
}

pub fn base_rows(m: &BaseMatrix) -> Vec<Vec<u8>> {
    m.to_rows().iter().map(|r| r.iter().map(|&b| b as u8).collect()).collect()
}

pub fn base_matrix(rows: &[Vec<u8>], what: &'static str) -> Result<BaseMatrix, CliError> {
    let rows = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|&b| match b {
                    0 => Ok(false),
                    1 => Ok(true),
                    other => Err(CliError::malformed(what, format!("GF(2) entry {other}"))),
                })
                .collect()
        })
        .collect::<Result<Vec<Vec<bool>>, _>>()?;
    BaseMatrix::from_rows(&rows).map_err(|e| CliError::malformed(what, e))
}
