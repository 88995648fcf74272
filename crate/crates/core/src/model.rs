//! Potential description for Penner-type models and the config file grammar.
//!
//! A potential is `W(z) = W0(z) - sum_i mu_i log(z - q_i)` with polynomial
//! `W0(z) = sum_{m=1}^d c_m z^m`. For Z2-symmetric models the log terms are
//! stored in the paired form `mu_i log(z^2 - q_i^2)` and `W0` must be even.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{parse_rational, Rat};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Contour {
    /// `[0, inf)`
    HalfLine,
    /// the whole real axis
    RealLine,
    /// `[0, 1]`
    UnitInterval,
}

impl Contour {
    pub fn tag(&self) -> &'static str {
        match self {
            Contour::HalfLine => "half-line",
            Contour::RealLine => "real-line",
            Contour::UnitInterval => "unit-interval",
        }
    }

    pub fn from_tag(s: &str) -> Result<Self> {
        match s {
            "half-line" => Ok(Contour::HalfLine),
            "real-line" => Ok(Contour::RealLine),
            "unit-interval" => Ok(Contour::UnitInterval),
            other => Err(Error::validation(format!(
                "contour {other:?} is not supported; allowable contours for general \
                 complex parameters require a case-by-case S-curve analysis"
            ))),
        }
    }
}

/// One logarithmic term `mu log(z - q)`, or `mu log(z^2 - q^2)` for
/// Z2-symmetric potentials.
#[derive(Clone, Debug, PartialEq)]
pub struct LogTerm {
    pub mu: Rat,
    pub q_re: Rat,
    pub q_im: Rat,
}

impl LogTerm {
    pub fn real(mu: Rat, q: Rat) -> Self {
        LogTerm {
            mu,
            q_re: q,
            q_im: Rat::from(0),
        }
    }

    pub fn q_is_real(&self) -> bool {
        self.q_im == 0
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Potential {
    /// Coefficients `c_1..c_d` of `W0(z) = sum c_m z^m`.
    pub poly: Vec<Rat>,
    pub logterms: Vec<LogTerm>,
    pub contour: Contour,
    pub z2_symmetric: bool,
}

impl Potential {
    pub fn new(
        poly: Vec<Rat>,
        logterms: Vec<LogTerm>,
        contour: Contour,
        z2_symmetric: bool,
    ) -> Result<Self> {
        let p = Potential {
            poly,
            logterms,
            contour,
            z2_symmetric,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn degree(&self) -> usize {
        self.poly
            .iter()
            .rposition(|c| *c != 0)
            .map(|i| i + 1)
            .unwrap_or(0)
    }

    /// Coefficient `c_m` of `z^m` in `W0`.
    pub fn w0_coeff(&self, m: usize) -> Rat {
        if m >= 1 && m <= self.poly.len() {
            self.poly[m - 1].clone()
        } else {
            Rat::from(0)
        }
    }

    /// Coefficients of `W0'(z) = sum m c_m z^{m-1}`, index = power of z.
    pub fn w0_prime_coeffs(&self) -> Vec<Rat> {
        let d = self.degree();
        (0..d)
            .map(|j| Rat::from(&self.poly[j] * Rat::from((j + 1) as u64)))
            .collect()
    }

    /// For Z2-symmetric potentials, coefficients of `V'(lambda)` where
    /// `V(lambda) = W0(z)` with `lambda = z^2`.
    pub fn v_prime_coeffs(&self) -> Result<Vec<Rat>> {
        if !self.z2_symmetric {
            return Err(Error::validation(
                "lambda-plane data requires a Z2-symmetric potential",
            ));
        }
        let d = self.degree();
        let half_d = d / 2;
        Ok((0..half_d)
            .map(|j| Rat::from(&self.w0_coeff(2 * (j + 1)) * Rat::from((j + 1) as u64)))
            .collect())
    }

    fn validate(&self) -> Result<()> {
        if self.z2_symmetric {
            for (i, c) in self.poly.iter().enumerate() {
                let m = i + 1;
                if m % 2 == 1 && *c != 0 {
                    return Err(Error::validation(format!(
                        "Z2-symmetric potential has odd monomial z^{m}"
                    )));
                }
            }
            if self.contour != Contour::RealLine {
                return Err(Error::validation(
                    "Z2-symmetric potentials need a symmetric contour (real line)",
                ));
            }
            for t in &self.logterms {
                if !t.q_is_real() || t.q_re != 0 {
                    return Err(Error::validation(
                        "Z2-symmetric log terms are supported at q = 0 only",
                    ));
                }
            }
        }
        let d = self.degree();
        match self.contour {
            Contour::HalfLine => {
                if d == 0 {
                    return Err(Error::validation(
                        "weight does not decay on [0, inf) without a polynomial part",
                    ));
                }
                if self.poly[d - 1] <= 0 {
                    return Err(Error::validation(
                        "leading coefficient must be positive on [0, inf)",
                    ));
                }
            }
            Contour::RealLine => {
                if d == 0 || d % 2 == 1 {
                    return Err(Error::validation(
                        "weight on the real line needs an even polynomial degree",
                    ));
                }
                if self.poly[d - 1] <= 0 {
                    return Err(Error::validation(
                        "leading coefficient must be positive on the real line",
                    ));
                }
            }
            Contour::UnitInterval => {}
        }
        for t in &self.logterms {
            if !t.q_is_real() {
                // complex q: fine off the real contours
                continue;
            }
            let q = &t.q_re;
            let interior = match self.contour {
                Contour::HalfLine => *q > 0,
                Contour::RealLine => !self.z2_symmetric, // any real q sits on the contour
                Contour::UnitInterval => *q > 0 && *q < 1,
            };
            if interior && !(self.z2_symmetric && *q == 0) {
                return Err(Error::validation(format!(
                    "log singularity at q = {q} lies in the contour interior"
                )));
            }
        }
        Ok(())
    }
}

/// The named models used throughout; each expands to a validated potential.
#[derive(Clone, Debug, PartialEq)]
pub enum ModelPreset {
    Gaussian,
    LinearPenner,
    GaussianPenner,
    DoublePenner { mu0: Rat, mu1: Rat },
    CubicPenner,
}

impl ModelPreset {
    pub fn name(&self) -> &'static str {
        match self {
            ModelPreset::Gaussian => "gaussian",
            ModelPreset::LinearPenner => "linear_penner",
            ModelPreset::GaussianPenner => "gaussian_penner",
            ModelPreset::DoublePenner { .. } => "double_penner",
            ModelPreset::CubicPenner => "cubic_penner",
        }
    }

    pub fn potential(&self) -> Potential {
        let p = match self {
            // W = z^2/2
            ModelPreset::Gaussian => Potential::new(
                vec![Rat::from(0), Rat::from((1, 2))],
                vec![],
                Contour::RealLine,
                true,
            ),
            // W = z - log z on [0, inf)
            ModelPreset::LinearPenner => Potential::new(
                vec![Rat::from(1)],
                vec![LogTerm::real(Rat::from(1), Rat::from(0))],
                Contour::HalfLine,
                false,
            ),
            // W = z^2/2 - (1/2) log z^2 on the real line
            ModelPreset::GaussianPenner => Potential::new(
                vec![Rat::from(0), Rat::from((1, 2))],
                vec![LogTerm::real(Rat::from((1, 2)), Rat::from(0))],
                Contour::RealLine,
                true,
            ),
            // W = -mu0 log z - mu1 log(1 - z) on [0, 1]
            ModelPreset::DoublePenner { mu0, mu1 } => Potential::new(
                vec![],
                vec![
                    LogTerm::real(mu0.clone(), Rat::from(0)),
                    LogTerm::real(mu1.clone(), Rat::from(1)),
                ],
                Contour::UnitInterval,
                false,
            ),
            // W = z^3/3 - log z on [0, inf)
            ModelPreset::CubicPenner => Potential::new(
                vec![Rat::from(0), Rat::from(0), Rat::from((1, 3))],
                vec![LogTerm::real(Rat::from(1), Rat::from(0))],
                Contour::HalfLine,
                false,
            ),
        };
        p.expect("presets are valid by construction")
    }

    pub fn from_name(name: &str, mu0: Option<Rat>, mu1: Option<Rat>) -> Result<Self> {
        match name {
            "gaussian" => Ok(ModelPreset::Gaussian),
            "linear_penner" => Ok(ModelPreset::LinearPenner),
            "gaussian_penner" => Ok(ModelPreset::GaussianPenner),
            "double_penner" => Ok(ModelPreset::DoublePenner {
                mu0: mu0.ok_or_else(|| Error::validation("double_penner needs mu0"))?,
                mu1: mu1.ok_or_else(|| Error::validation("double_penner needs mu1"))?,
            }),
            "cubic_penner" => Ok(ModelPreset::CubicPenner),
            other => Err(Error::validation(format!("unknown preset {other:?}"))),
        }
    }
}

/// On-disk config: rational values as exact `p/q` strings.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct ModelConfig {
    pub poly: Vec<String>,
    pub logterms: Vec<LogTermConfig>,
    pub contour: String,
    pub z2: bool,
    #[serde(rename = "N")]
    pub n: String,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct LogTermConfig {
    pub mu: String,
    pub q: [String; 2],
}

/// Parse a JSON config into a validated potential plus `N`.
pub fn build_potential(text: &str) -> Result<(Potential, Rat)> {
    let cfg: ModelConfig =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("config: {e}")))?;
    let poly = cfg
        .poly
        .iter()
        .map(|s| parse_rational(s))
        .collect::<Result<Vec<_>>>()?;
    let logterms = cfg
        .logterms
        .iter()
        .map(|t| {
            Ok(LogTerm {
                mu: parse_rational(&t.mu)?,
                q_re: parse_rational(&t.q[0])?,
                q_im: parse_rational(&t.q[1])?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let contour = Contour::from_tag(&cfg.contour)?;
    let n = parse_rational(&cfg.n)?;
    if n <= 0 {
        return Err(Error::validation("N must be positive"));
    }
    let p = Potential::new(poly, logterms, contour, cfg.z2)?;
    Ok((p, n))
}

/// Serialize a potential and `N` back to the config grammar.
pub fn serialize_potential(p: &Potential, n: &Rat) -> String {
    let cfg = ModelConfig {
        poly: p.poly.iter().map(|c| c.to_string()).collect(),
        logterms: p
            .logterms
            .iter()
            .map(|t| LogTermConfig {
                mu: t.mu.to_string(),
                q: [t.q_re.to_string(), t.q_im.to_string()],
            })
            .collect(),
        contour: p.contour.tag().to_string(),
        z2: p.z2_symmetric,
        n: n.to_string(),
    };
    serde_json::to_string_pretty(&cfg).expect("config serialization")
}
