use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::interval::{Interval, IntervalSet};
use crate::error::{Error, Result};
use crate::rational::{format_rational, Rational};

/// One constant segment of a step density.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DensityPiece {
    #[serde(with = "crate::rational::serde_string")]
    pub from: Rational,
    #[serde(with = "crate::rational::serde_string")]
    pub to: Rational,
    #[serde(with = "crate::rational::serde_string")]
    pub density: Rational,
}

impl DensityPiece {
    pub fn new(from: Rational, to: Rational, density: Rational) -> Self {
        DensityPiece { from, to, density }
    }

    pub fn mass(&self) -> Rational {
        &self.density * (&self.to - &self.from)
    }
}

/// The invariant a candidate density breaks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DensityViolation {
    NegativeDensity { piece: usize, density: Rational },
    GapOrOverlap { piece: usize, detail: String },
    TotalMassNotOne { total: Rational },
}

impl DensityViolation {
    pub fn code(&self) -> &'static str {
        match self {
            DensityViolation::NegativeDensity { .. } => "NEGATIVE_DENSITY",
            DensityViolation::GapOrOverlap { .. } => "GAP_OR_OVERLAP",
            DensityViolation::TotalMassNotOne { .. } => "TOTAL_MASS_NOT_ONE",
        }
    }
}

impl fmt::Display for DensityViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DensityViolation::NegativeDensity { piece, density } => write!(
                f,
                "NEGATIVE_DENSITY: piece {piece} has density {}",
                format_rational(density)
            ),
            DensityViolation::GapOrOverlap { piece, detail } => {
                write!(f, "GAP_OR_OVERLAP: piece {piece}: {detail}")
            }
            DensityViolation::TotalMassNotOne { total } => {
                write!(
                    f,
                    "TOTAL_MASS_NOT_ONE: total mass {}",
                    format_rational(total)
                )
            }
        }
    }
}

/// Checks tiling of `[0,1]`, nonnegativity and unit mass, reporting the first violation.
pub fn validate_density(pieces: &[DensityPiece]) -> std::result::Result<(), DensityViolation> {
    if pieces.is_empty() {
        return Err(DensityViolation::GapOrOverlap {
            piece: 0,
            detail: "no pieces".into(),
        });
    }
    let mut cursor = Rational::zero();
    for (i, p) in pieces.iter().enumerate() {
        if p.from != cursor {
            return Err(DensityViolation::GapOrOverlap {
                piece: i,
                detail: format!(
                    "starts at {} but previous coverage ends at {}",
                    format_rational(&p.from),
                    format_rational(&cursor)
                ),
            });
        }
        if p.to <= p.from {
            return Err(DensityViolation::GapOrOverlap {
                piece: i,
                detail: format!(
                    "empty or reversed span [{}, {}]",
                    format_rational(&p.from),
                    format_rational(&p.to)
                ),
            });
        }
        if p.density.is_negative() {
            return Err(DensityViolation::NegativeDensity {
                piece: i,
                density: p.density.clone(),
            });
        }
        cursor = p.to.clone();
    }
    if cursor != Rational::one() {
        return Err(DensityViolation::GapOrOverlap {
            piece: pieces.len() - 1,
            detail: format!("coverage ends at {}, not 1", format_rational(&cursor)),
        });
    }
    let total: Rational = pieces.iter().map(DensityPiece::mass).sum();
    if !total.is_one() {
        return Err(DensityViolation::TotalMassNotOne { total });
    }
    Ok(())
}

/// A value measure on `[0,1]` given by a piecewise-constant probability density.
///
/// Always valid once constructed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StepDensity {
    pieces: Vec<DensityPiece>,
}

impl StepDensity {
    pub fn new(pieces: Vec<DensityPiece>) -> Result<Self> {
        validate_density(&pieces).map_err(|violation| Error::InvalidDensity {
            player: None,
            violation,
        })?;
        Ok(StepDensity { pieces })
    }

    /// Builds from `(from, to, density)` triples.
    pub fn from_triples<I>(triples: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Rational, Rational, Rational)>,
    {
        StepDensity::new(
            triples
                .into_iter()
                .map(|(a, b, d)| DensityPiece::new(a, b, d))
                .collect(),
        )
    }

    pub fn uniform() -> Self {
        StepDensity {
            pieces: vec![DensityPiece::new(
                Rational::zero(),
                Rational::one(),
                Rational::one(),
            )],
        }
    }

    /// Density proportional to `weights` on the given ascending breakpoints,
    /// normalized to unit mass. `breaks` must run from 0 to 1.
    pub fn from_weights(breaks: &[Rational], weights: &[Rational]) -> Result<Self> {
        if breaks.len() != weights.len() + 1 {
            return Err(Error::Domain(
                "need exactly one more breakpoint than weights".into(),
            ));
        }
        let raw: Rational = breaks
            .windows(2)
            .zip(weights)
            .map(|(w, d)| d * (&w[1] - &w[0]))
            .sum();
        if !raw.is_positive() {
            return Err(Error::InvalidDensity {
                player: None,
                violation: DensityViolation::TotalMassNotOne { total: raw },
            });
        }
        StepDensity::from_triples(
            breaks
                .windows(2)
                .zip(weights)
                .map(|(w, d)| (w[0].clone(), w[1].clone(), d / &raw)),
        )
    }

    pub fn pieces(&self) -> &[DensityPiece] {
        &self.pieces
    }

    /// Piece boundaries including 0 and 1, ascending.
    pub fn breakpoints(&self) -> Vec<Rational> {
        let mut out = Vec::with_capacity(self.pieces.len() + 1);
        out.push(Rational::zero());
        out.extend(self.pieces.iter().map(|p| p.to.clone()));
        out
    }

    /// Density on the open piece containing `x`, taking the right-hand piece at a boundary.
    pub fn density_right_of(&self, x: &Rational) -> &Rational {
        self.pieces
            .iter()
            .find(|p| &p.to > x)
            .map(|p| &p.density)
            .unwrap_or(&self.pieces.last().expect("nonempty").density)
    }

    /// Mass of `[from, to]`; endpoints outside `[0,1]` are clipped.
    pub fn mass_between(&self, from: &Rational, to: &Rational) -> Rational {
        self.pieces
            .iter()
            .filter(|p| &p.to > from && &p.from < to)
            .map(|p| {
                let lo = if &p.from > from { &p.from } else { from };
                let hi = if &p.to < to { &p.to } else { to };
                &p.density * (hi - lo)
            })
            .sum()
    }

    pub fn mass_of_interval(&self, iv: &Interval) -> Rational {
        self.mass_between(iv.lo(), iv.hi())
    }

    /// Value of a set: sum over pieces of density times overlap length.
    pub fn mass(&self, set: &IntervalSet) -> Rational {
        set.intervals()
            .iter()
            .map(|iv| self.mass_of_interval(iv))
            .sum()
    }

    /// `mass([0, x])`. Errors outside `[0,1]`.
    pub fn cdf(&self, x: &Rational) -> Result<Rational> {
        check_unit("cdf argument", x)?;
        Ok(self.cdf_unchecked(x))
    }

    pub(crate) fn cdf_unchecked(&self, x: &Rational) -> Rational {
        self.mass_between(&Rational::zero(), x)
    }

    /// Leftmost `x ≥ from` with `mass([from, x]) ≥ p`.
    pub fn quantile_left(&self, p: &Rational, from: &Rational) -> Result<Rational> {
        check_unit("quantile anchor", from)?;
        if p.is_negative() {
            return Err(Error::Domain(format!(
                "negative quantile target {}",
                format_rational(p)
            )));
        }
        if p.is_zero() {
            return Ok(from.clone());
        }
        let mut need = p.clone();
        for piece in self.pieces.iter().filter(|q| &q.to > from) {
            if piece.density.is_zero() {
                continue;
            }
            let start = if &piece.from > from {
                &piece.from
            } else {
                from
            };
            let avail = &piece.density * (&piece.to - start);
            if avail >= need {
                return Ok(start + need / &piece.density);
            }
            need -= avail;
        }
        Err(Error::InsufficientMass {
            requested: Box::new(p.clone()),
            available: Box::new(self.mass_between(from, &Rational::one())),
        })
    }

    /// `inf { x : cdf(x) ≥ level }`, for `level` in `[0, 1]`.
    pub fn level_left(&self, level: &Rational) -> Result<Rational> {
        self.quantile_left(level, &Rational::zero())
    }

    /// `sup { x : cdf(x) ≤ level }`, for `level` in `[0, 1]`.
    pub fn level_right(&self, level: &Rational) -> Result<Rational> {
        if level >= &Rational::one() {
            return Ok(Rational::one());
        }
        let x = self.level_left(level)?;
        Ok(self.zero_run_end(&x))
    }

    /// End of the zero-density stretch that starts at `x` (or `x` itself).
    pub fn zero_run_end(&self, x: &Rational) -> Rational {
        let mut end = x.clone();
        for piece in self.pieces.iter().filter(|p| &p.to > x) {
            if piece.density.is_zero() {
                end = piece.to.clone();
            } else {
                break;
            }
        }
        end
    }

    /// `[inf{x: cdf ≥ 1/2}, sup{x: cdf ≤ 1/2}]`; degenerate exactly when the median is unique.
    pub fn median_interval(&self) -> Interval {
        let half = Rational::new(1.into(), 2.into());
        let lo = self.level_left(&half).expect("unit mass covers 1/2");
        let hi = self.level_right(&half).expect("unit mass covers 1/2");
        Interval::new(lo, hi).expect("median lies in [0,1]")
    }
}

fn check_unit(what: &str, x: &Rational) -> Result<()> {
    if x.is_negative() || x > &Rational::one() {
        return Err(Error::Domain(format!(
            "{what} {} outside [0,1]",
            format_rational(x)
        )));
    }
    Ok(())
}
