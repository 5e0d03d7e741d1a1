//! The sixteen-problem benchmark catalog.
//!
//! Every function is a pure map `&[f64] -> f64` to be minimized. Closed forms
//! follow the usual literature definitions (Rosenbrock with coefficient 100,
//! Rastrigin with `A = 10`, Ackley with `a = 20, b = 0.2, c = 2π`, ...).
//!
//! Global minima are stored at full precision. The commonly quoted rounded
//! values (for example `-19.2085` for Holder table) sit slightly *above* the
//! true minima, so using them as a floor would reject correct optima.
use core::f64::consts::{E, PI};
use core::fmt;
use core::str::FromStr;

use alloc::string::ToString;
use alloc::vec;

use libm::{cos, exp, fabs, pow, sin, sqrt};

use crate::error::{Error, Result};
use crate::space::SearchSpace;

/// Identifier of a catalog problem, `P1` through `P16`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum ProblemId {
    P1,
    P2,
    P3,
    P4,
    P5,
    P6,
    P7,
    P8,
    P9,
    P10,
    P11,
    P12,
    P13,
    P14,
    P15,
    P16,
}

impl ProblemId {
    pub const ALL: [ProblemId; 16] = [
        ProblemId::P1,
        ProblemId::P2,
        ProblemId::P3,
        ProblemId::P4,
        ProblemId::P5,
        ProblemId::P6,
        ProblemId::P7,
        ProblemId::P8,
        ProblemId::P9,
        ProblemId::P10,
        ProblemId::P11,
        ProblemId::P12,
        ProblemId::P13,
        ProblemId::P14,
        ProblemId::P15,
        ProblemId::P16,
    ];

    /// Zero-based position in the catalog.
    pub const fn index(self) -> usize {
        self as usize
    }

    pub fn spec(self) -> &'static ProblemSpec {
        &CATALOG[self.index()]
    }
}

impl fmt::Display for ProblemId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P{}", self.index() + 1)
    }
}

impl FromStr for ProblemId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let digits = t.strip_prefix('P').or_else(|| t.strip_prefix('p'));
        digits
            .and_then(|d| d.parse::<usize>().ok())
            .filter(|n| (1..=16).contains(n))
            .map(|n| ProblemId::ALL[n - 1])
            .ok_or_else(|| Error::UnknownName {
                kind: "problem",
                name: t.to_string(),
            })
    }
}

/// Dimensionality class of a problem.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Dimensionality {
    /// Defined for exactly `k` coordinates.
    Fixed(usize),
    /// Defined for any positive number of coordinates.
    Variable,
}

impl Dimensionality {
    pub fn accepts(self, dim: usize) -> bool {
        match self {
            Dimensionality::Fixed(k) => dim == k,
            Dimensionality::Variable => dim >= 1,
        }
    }
}

impl fmt::Display for Dimensionality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dimensionality::Fixed(k) => write!(f, "{k}"),
            Dimensionality::Variable => f.write_str("n"),
        }
    }
}

/// One catalog row.
#[derive(Debug, Clone, PartialEq)]
pub struct ProblemSpec {
    pub id: ProblemId,
    pub name: &'static str,
    /// Global minimum. For Styblinski-Tang this is the per-coordinate value;
    /// use [`ProblemSpec::minimum_at`] for the minimum at a given dimension.
    pub global_minimum: f64,
    pub default_lower: f64,
    pub default_upper: f64,
    pub dimensionality: Dimensionality,
    /// Literature success percentage. Lower means harder.
    pub success_percent: f64,
    minimum_per_coordinate: bool,
}

impl ProblemSpec {
    /// Global minimum of the problem in `dim` coordinates.
    pub fn minimum_at(&self, dim: usize) -> f64 {
        if self.minimum_per_coordinate {
            self.global_minimum * dim as f64
        } else {
            self.global_minimum
        }
    }

    /// Native dimension for fixed problems, `None` for variable ones.
    pub fn native_dim(&self) -> Option<usize> {
        match self.dimensionality {
            Dimensionality::Fixed(k) => Some(k),
            Dimensionality::Variable => None,
        }
    }

    pub fn check_dim(&self, dim: usize) -> Result<()> {
        if self.dimensionality.accepts(dim) {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                problem: self.id,
                expected: self.dimensionality,
                got: dim,
            })
        }
    }
}

const fn row(
    id: ProblemId,
    name: &'static str,
    global_minimum: f64,
    (default_lower, default_upper): (f64, f64),
    dimensionality: Dimensionality,
    success_percent: f64,
) -> ProblemSpec {
    ProblemSpec {
        id,
        name,
        global_minimum,
        default_lower,
        default_upper,
        dimensionality,
        success_percent,
        minimum_per_coordinate: false,
    }
}

use Dimensionality::{Fixed, Variable};

const BIRD_MIN: f64 = -106.764_536_749_264_67;
const CROSS_IN_TRAY_MIN: f64 = -2.062_611_870_822_737;
const HOLDER_TABLE_MIN: f64 = -19.208_502_567_886_732;
const STYBLINSKI_TANG_MIN: f64 = -39.166_165_703_771_41;
/// `max x·sin(√|x|)` over `[-500, 500]`, so Schwefel 2.26 bottoms out at 0.
const SCHWEFEL_OFFSET: f64 = 418.982_887_272_433_7;

static CATALOG: [ProblemSpec; 16] = [
    row(ProblemId::P1, "Ackley", 0.0, (-32.0, 32.0), Variable, 48.25),
    row(ProblemId::P2, "Alpine01", 0.0, (0.0, 10.0), Fixed(2), 65.17),
    row(ProblemId::P3, "Bird", BIRD_MIN, (-2.0 * PI, 2.0 * PI), Fixed(2), 59.00),
    row(ProblemId::P4, "Leon", 0.0, (0.0, 10.0), Fixed(2), 41.17),
    row(
        ProblemId::P5,
        "CrossInTray",
        CROSS_IN_TRAY_MIN,
        (-10.0, 10.0),
        Fixed(2),
        74.08,
    ),
    row(ProblemId::P6, "Easom", -1.0, (-100.0, 100.0), Fixed(2), 26.08),
    row(ProblemId::P7, "Whitley", 0.0, (-10.24, 10.24), Fixed(2), 4.92),
    row(ProblemId::P8, "EggCrate", 0.0, (-5.0, 5.0), Fixed(2), 64.92),
    row(ProblemId::P9, "Griewank", 0.0, (-600.0, 600.0), Variable, 6.08),
    row(
        ProblemId::P10,
        "HolderTable",
        HOLDER_TABLE_MIN,
        (-10.0, 10.0),
        Fixed(2),
        80.08,
    ),
    row(ProblemId::P11, "Rastrigin", 0.0, (-5.12, 5.12), Variable, 39.50),
    row(ProblemId::P12, "Rosenbrock", 0.0, (-5.0, 10.0), Variable, 44.17),
    row(ProblemId::P13, "Salomon", 0.0, (-100.0, 100.0), Fixed(2), 10.33),
    row(ProblemId::P14, "Sphere", 0.0, (-1.0, 1.0), Fixed(2), 82.75),
    ProblemSpec {
        minimum_per_coordinate: true,
        ..row(
            ProblemId::P15,
            "StyblinskiTang",
            STYBLINSKI_TANG_MIN,
            (-5.0, 5.0),
            Variable,
            70.50,
        )
    },
    row(ProblemId::P16, "Schwefel26", 0.0, (-500.0, 500.0), Fixed(2), 62.67),
];

/// The full catalog, ordered `P1..P16`.
pub fn catalog() -> &'static [ProblemSpec; 16] {
    &CATALOG
}

/// Evaluates problem `id` at `x` after checking the dimension and finiteness.
pub fn evaluate(id: ProblemId, x: &[f64]) -> Result<f64> {
    id.spec().check_dim(x.len())?;
    if let Some(index) = x.iter().position(|v| !v.is_finite()) {
        return Err(Error::NonFiniteInput { index });
    }
    Ok(evaluate_unchecked(id, x))
}

/// Evaluates without validation. Callers must guarantee a valid dimension.
pub fn evaluate_unchecked(id: ProblemId, x: &[f64]) -> f64 {
    match id {
        ProblemId::P1 => ackley(x),
        ProblemId::P2 => alpine01(x),
        ProblemId::P3 => bird(x[0], x[1]),
        ProblemId::P4 => leon(x[0], x[1]),
        ProblemId::P5 => cross_in_tray(x[0], x[1]),
        ProblemId::P6 => easom(x[0], x[1]),
        ProblemId::P7 => whitley(x),
        ProblemId::P8 => egg_crate(x[0], x[1]),
        ProblemId::P9 => griewank(x),
        ProblemId::P10 => holder_table(x[0], x[1]),
        ProblemId::P11 => rastrigin(x),
        ProblemId::P12 => rosenbrock(x),
        ProblemId::P13 => salomon(x),
        ProblemId::P14 => sphere(x),
        ProblemId::P15 => styblinski_tang(x),
        ProblemId::P16 => schwefel26(x),
    }
}

/// The catalog's default box replicated across `dim` coordinates.
pub fn default_space(id: ProblemId, dim: usize) -> Result<SearchSpace> {
    let spec = id.spec();
    spec.check_dim(dim)?;
    SearchSpace::uniform(spec.default_lower, spec.default_upper, dim)
}

fn sphere(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum()
}

fn ackley(x: &[f64]) -> f64 {
    let n = x.len() as f64;
    let sq = x.iter().map(|v| v * v).sum::<f64>() / n;
    let cs = x.iter().map(|&v| cos(2.0 * PI * v)).sum::<f64>() / n;
    -20.0 * exp(-0.2 * sqrt(sq)) - exp(cs) + 20.0 + E
}

fn alpine01(x: &[f64]) -> f64 {
    x.iter().map(|&v| fabs(v * sin(v) + 0.1 * v)).sum()
}

fn bird(x: f64, y: f64) -> f64 {
    let a = 1.0 - cos(y);
    let b = 1.0 - sin(x);
    sin(x) * exp(a * a) + cos(y) * exp(b * b) + (x - y) * (x - y)
}

fn leon(x: f64, y: f64) -> f64 {
    let t = y - x * x * x;
    100.0 * t * t + (1.0 - x) * (1.0 - x)
}

fn cross_in_tray(x: f64, y: f64) -> f64 {
    let r = sqrt(x * x + y * y);
    let inner = fabs(sin(x) * sin(y) * exp(fabs(100.0 - r / PI)));
    -0.0001 * pow(inner + 1.0, 0.1)
}

fn easom(x: f64, y: f64) -> f64 {
    let dx = x - PI;
    let dy = y - PI;
    -cos(x) * cos(y) * exp(-(dx * dx) - dy * dy)
}

fn whitley(x: &[f64]) -> f64 {
    let mut total = 0.0;
    for &xi in x {
        for &xj in x {
            let t = xi * xi - xj;
            let y = 100.0 * t * t + (1.0 - xj) * (1.0 - xj);
            total += y * y / 4000.0 - cos(y) + 1.0;
        }
    }
    total
}

fn egg_crate(x: f64, y: f64) -> f64 {
    let (sx, sy) = (sin(x), sin(y));
    x * x + y * y + 25.0 * (sx * sx + sy * sy)
}

fn griewank(x: &[f64]) -> f64 {
    let sum = x.iter().map(|v| v * v).sum::<f64>() / 4000.0;
    let prod = x
        .iter()
        .enumerate()
        .map(|(i, &v)| cos(v / sqrt((i + 1) as f64)))
        .product::<f64>();
    1.0 + sum - prod
}

fn holder_table(x: f64, y: f64) -> f64 {
    let r = sqrt(x * x + y * y);
    -fabs(sin(x) * cos(y) * exp(fabs(1.0 - r / PI)))
}

fn rastrigin(x: &[f64]) -> f64 {
    10.0 * x.len() as f64 + x.iter().map(|&v| v * v - 10.0 * cos(2.0 * PI * v)).sum::<f64>()
}

fn rosenbrock(x: &[f64]) -> f64 {
    x.windows(2)
        .map(|w| {
            let t = w[1] - w[0] * w[0];
            100.0 * t * t + (1.0 - w[0]) * (1.0 - w[0])
        })
        .sum()
}

fn salomon(x: &[f64]) -> f64 {
    let r = sqrt(sphere(x));
    1.0 - cos(2.0 * PI * r) + 0.1 * r
}

fn styblinski_tang(x: &[f64]) -> f64 {
    0.5 * x
        .iter()
        .map(|&v| {
            let v2 = v * v;
            v2 * v2 - 16.0 * v2 + 5.0 * v
        })
        .sum::<f64>()
}

fn schwefel26(x: &[f64]) -> f64 {
    SCHWEFEL_OFFSET * x.len() as f64 - x.iter().map(|&v| v * sin(sqrt(fabs(v)))).sum::<f64>()
}

/// A global minimizer of problem `id` in `dim` coordinates (one of several
/// for the symmetric problems).
pub fn known_minimizer(id: ProblemId, dim: usize) -> alloc::vec::Vec<f64> {
    match id {
        ProblemId::P1 | ProblemId::P2 | ProblemId::P8 | ProblemId::P9 | ProblemId::P11 => {
            vec![0.0; dim]
        }
        ProblemId::P13 | ProblemId::P14 => vec![0.0; dim],
        ProblemId::P3 => vec![4.701_043_130_249_553, 3.152_938_503_724_93],
        ProblemId::P4 | ProblemId::P7 | ProblemId::P12 => vec![1.0; dim],
        ProblemId::P5 => vec![1.349_406_617_153_910_8; 2],
        ProblemId::P6 => vec![PI, PI],
        ProblemId::P10 => vec![8.055_023_475_736_563, 9.664_590_019_241_273],
        ProblemId::P15 => vec![-2.903_534_027_771_177; dim],
        ProblemId::P16 => vec![420.968_746_359_982; dim],
    }
}
