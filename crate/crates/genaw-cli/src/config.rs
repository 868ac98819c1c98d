//! Run configuration: a TOML file with flag overrides.
//!
//! Every real is written with 17 significant digits so a saved config reads
//! back to the same doubles. Complex parameters are strings such as `"0.3+0.4i"`.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use anyhow::{Context, Result};
use genaw::askey_wilson::AWParams;
use genaw::gen_aw::MassConfig;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::InvalidInput;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputFormat::Json => "json",
            OutputFormat::Csv => "csv",
        })
    }
}

/// A real written either as a TOML number or as a string.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
enum RealField {
    Number(f64),
    Text(String),
}

/// A complex value written as a real number or as a string like `"0.3-0.4i"`.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
enum ComplexField {
    Number(f64),
    Text(String),
}

/// A seed: TOML integers stop at `i64::MAX`, so larger seeds travel as strings.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
enum SeedField {
    Number(u64),
    Text(String),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawParams {
    a: ComplexField,
    b: ComplexField,
    c: ComplexField,
    d: ComplexField,
    q: RealField,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMasses {
    neg: RealField,
    pos: RealField,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    n_max: usize,
    tol: RealField,
    seed: SeedField,
    #[serde(default = "default_format")]
    format: OutputFormat,
    params: RawParams,
    masses: RawMasses,
}

fn default_format() -> OutputFormat {
    OutputFormat::Json
}

/// Parameters of one run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    /// `a, b, c, d`.
    pub abcd: [Complex64; 4],
    pub q: f64,
    pub mass_neg: f64,
    pub mass_pos: f64,
    pub n_max: usize,
    pub tol: f64,
    pub seed: u64,
    pub format: OutputFormat,
}

/// A real with 17 significant digits.
pub fn fmt_real(v: f64) -> String {
    format!("{v:.16e}")
}

/// A complex value as `re+imi`, each part with 17 significant digits.
/// Signed zeros are written as `+0`, which is what the parser returns for them.
pub fn fmt_complex(z: Complex64) -> String {
    let z = Complex64::new(z.re + 0.0, z.im + 0.0);
    format!("{:.16e}{}{:.16e}i", z.re, if z.im.is_sign_negative() { "-" } else { "+" }, z.im.abs())
}

pub fn parse_real(name: &str, s: &str) -> Result<f64> {
    f64::from_str(s.trim())
        .map_err(|_| InvalidInput(format!("{name}: cannot parse {s:?} as a real number")).into())
}

pub fn parse_complex(name: &str, s: &str) -> Result<Complex64> {
    Complex64::from_str(&s.replace(' ', ""))
        .map_err(|_| InvalidInput(format!("{name}: cannot parse {s:?} as a complex number")).into())
}

impl RealField {
    fn value(&self, name: &str) -> Result<f64> {
        match self {
            RealField::Number(v) => Ok(*v),
            RealField::Text(s) => parse_real(name, s),
        }
    }
}

impl ComplexField {
    fn value(&self, name: &str) -> Result<Complex64> {
        match self {
            ComplexField::Number(v) => Ok(Complex64::new(*v, 0.0)),
            ComplexField::Text(s) => parse_complex(name, s),
        }
    }
}

impl RunConfig {
    /// The built-in stock configuration.
    pub fn stock() -> Self {
        RunConfig {
            abcd: [
                Complex64::new(0.3, 0.4),
                Complex64::new(0.3, -0.4),
                Complex64::new(0.2, 0.0),
                Complex64::new(-0.5, 0.0),
            ],
            q: 0.5,
            mass_neg: 0.3,
            mass_pos: 0.7,
            n_max: 10,
            tol: 1e-8,
            seed: 42,
            format: OutputFormat::Json,
        }
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        let raw: RawConfig =
            toml::from_str(text).map_err(|e| InvalidInput(format!("config: {}", e.message())))?;
        let p = &raw.params;
        Ok(RunConfig {
            abcd: [p.a.value("a")?, p.b.value("b")?, p.c.value("c")?, p.d.value("d")?],
            q: p.q.value("q")?,
            mass_neg: raw.masses.neg.value("masses.neg")?,
            mass_pos: raw.masses.pos.value("masses.pos")?,
            n_max: raw.n_max,
            tol: raw.tol.value("tol")?,
            seed: match raw.seed {
                SeedField::Number(v) => v,
                SeedField::Text(s) => s
                    .trim()
                    .parse()
                    .map_err(|_| InvalidInput(format!("seed: cannot parse {s:?} as an unsigned integer")))?,
            },
            format: raw.format,
        })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))
            .map_err(|e| InvalidInput(format!("{e:#}")))?;
        Self::from_toml(&text)
    }

    /// Serialises to TOML with every real at 17 significant digits.
    pub fn to_toml(&self) -> String {
        let [a, b, c, d] = self.abcd;
        format!(
            "n_max = {}\ntol = \"{}\"\nseed = {}\nformat = \"{}\"\n\n\
             [params]\na = \"{}\"\nb = \"{}\"\nc = \"{}\"\nd = \"{}\"\nq = \"{}\"\n\n\
             [masses]\nneg = \"{}\"\npos = \"{}\"\n",
            self.n_max,
            fmt_real(self.tol),
            if self.seed <= i64::MAX as u64 { self.seed.to_string() } else { format!("\"{}\"", self.seed) },
            self.format,
            fmt_complex(a),
            fmt_complex(b),
            fmt_complex(c),
            fmt_complex(d),
            fmt_real(self.q),
            fmt_real(self.mass_neg),
            fmt_real(self.mass_pos),
        )
    }

    /// Validated parameters; the error names the violated invariant.
    pub fn params(&self) -> Result<AWParams> {
        let [a, b, c, d] = self.abcd;
        Ok(AWParams::new(a, b, c, d, self.q)?)
    }

    pub fn masses(&self) -> Result<MassConfig> {
        Ok(MassConfig::new(self.mass_neg, self.mass_pos)?)
    }

    pub fn check_tol(&self) -> Result<()> {
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(InvalidInput(format!("tol must be positive and finite, got {}", self.tol)).into());
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn stock_file_matches_builtin() {
        let text = include_str!("../configs/stock.toml");
        assert_eq!(RunConfig::from_toml(text).unwrap(), RunConfig::stock());
    }

    #[test]
    fn rejects_unknown_keys_and_bad_numbers() {
        let bad = RunConfig::stock().to_toml().replace("seed", "sede");
        assert!(RunConfig::from_toml(&bad).unwrap_err().downcast_ref::<InvalidInput>().is_some());
        let bad = RunConfig::stock().to_toml().replace("\"2.0000000000000001e-1+0.0000000000000000e0i\"", "\"0.2x\"");
        assert!(RunConfig::from_toml(&bad).is_err());
    }

    fn real() -> impl Strategy<Value = f64> {
        prop_oneof![any::<f64>().prop_filter("finite", |v| v.is_finite()), -1.0..1.0f64]
    }

    proptest! {
        #[test]
        fn toml_round_trip_is_lossless(
            re in proptest::array::uniform4(real()),
            im in proptest::array::uniform4(real()),
            q in real(), a in real(), b in real(), tol in real(),
            n_max in 0usize..64, seed in any::<u64>(), csv in any::<bool>(),
        ) {
            let cfg = RunConfig {
                abcd: [0, 1, 2, 3].map(|i| Complex64::new(re[i], im[i])),
                q, mass_neg: a, mass_pos: b, n_max, tol, seed,
                format: if csv { OutputFormat::Csv } else { OutputFormat::Json },
            };
            let text = cfg.to_toml();
            let back = RunConfig::from_toml(&text).unwrap();
            prop_assert_eq!(&back, &cfg);
            prop_assert_eq!(back.to_toml(), text);
        }
    }
}
