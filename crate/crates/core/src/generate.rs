//! Seeded point-set generators.
//!
//! All generators draw from a ChaCha8 stream seeded with the 64-bit seed, so
//! a [`GeneratorSpec`] always produces the same point set.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{convex_hull, orient, Orientation, Point, PointSet};

/// Pentagon with its center, all five lines through the center halving.
pub const EXCEPTIONAL_COORDS: [(i64, i64); 6] = [(0, 0), (0, 100), (95, 31), (59, -81), (-59, -81), (-95, 31)];

pub fn exceptional_set() -> PointSet {
    PointSet::from_coords(&EXCEPTIONAL_COORDS).expect("exceptional set is in general position")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GeneratorKind {
    Convex,
    #[serde(rename = "random")]
    RandomDisk,
    OneInterior,
    ManyInterior,
    Exceptional,
}

impl GeneratorKind {
    pub const ALL: [GeneratorKind; 5] = [
        GeneratorKind::Convex,
        GeneratorKind::RandomDisk,
        GeneratorKind::OneInterior,
        GeneratorKind::ManyInterior,
        GeneratorKind::Exceptional,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            GeneratorKind::Convex => "convex",
            GeneratorKind::RandomDisk => "random",
            GeneratorKind::OneInterior => "one-interior",
            GeneratorKind::ManyInterior => "many-interior",
            GeneratorKind::Exceptional => "exceptional",
        }
    }

    /// Smallest even size this kind can produce.
    pub fn min_size(&self) -> usize {
        match self {
            GeneratorKind::Convex | GeneratorKind::RandomDisk => 2,
            GeneratorKind::OneInterior => 4,
            GeneratorKind::ManyInterior | GeneratorKind::Exceptional => 6,
        }
    }
}

impl fmt::Display for GeneratorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for GeneratorKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        GeneratorKind::ALL.into_iter().find(|k| k.as_str() == s).ok_or_else(|| format!("unknown generator kind {s:?}"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSpec {
    pub kind: GeneratorKind,
    pub n: usize,
    pub seed: u64,
    pub radius: i64,
    /// Rejected samples tolerated before giving up.
    pub max_attempts: usize,
}

impl GeneratorSpec {
    pub const DEFAULT_RADIUS: i64 = 1_000_000;
    pub const DEFAULT_ATTEMPTS: usize = 100_000;

    pub fn new(kind: GeneratorKind, n: usize, seed: u64) -> Self {
        GeneratorSpec { kind, n, seed, radius: Self::DEFAULT_RADIUS, max_attempts: Self::DEFAULT_ATTEMPTS }
    }
}

pub fn generate(spec: &GeneratorSpec) -> Result<PointSet> {
    if spec.kind == GeneratorKind::Exceptional {
        let set = exceptional_set();
        if !crate::classify::is_exceptional_six(&set) {
            return Err(Error::InternalInconsistency("fixed exceptional coordinates lost their halving lines".into()));
        }
        return Ok(set);
    }
    if spec.n % 2 == 1 {
        return Err(Error::OddSize(spec.n));
    }
    if spec.n < spec.kind.min_size() {
        return Err(Error::PreconditionViolated(format!(
            "{} needs at least {} points",
            spec.kind,
            spec.kind.min_size()
        )));
    }
    if spec.radius < 1 || spec.radius > crate::geometry::COORD_BOUND {
        return Err(Error::PreconditionViolated(format!("radius {} outside 1..=2^30", spec.radius)));
    }
    let mut gen =
        Sampler { rng: ChaCha8Rng::seed_from_u64(spec.seed), radius: spec.radius, budget: spec.max_attempts, spent: 0 };
    match spec.kind {
        GeneratorKind::Convex => gen.convex(spec.n),
        GeneratorKind::RandomDisk => gen.disk(spec.n),
        GeneratorKind::OneInterior => gen.one_interior(spec.n),
        GeneratorKind::ManyInterior => loop {
            let set = gen.disk(spec.n)?;
            if convex_hull(&set)?.interior.len() >= 2 {
                return Ok(set);
            }
            gen.reject()?;
        },
        GeneratorKind::Exceptional => unreachable!(),
    }
}

struct Sampler {
    rng: ChaCha8Rng,
    radius: i64,
    budget: usize,
    spent: usize,
}

impl Sampler {
    fn reject(&mut self) -> Result<()> {
        self.spent += 1;
        if self.spent > self.budget {
            Err(Error::GenerationExhausted { attempts: self.spent })
        } else {
            Ok(())
        }
    }

    fn on_circle(&mut self) -> Point {
        let t = self.rng.random::<f64>() * std::f64::consts::TAU;
        let r = self.radius as f64;
        Point::new((r * t.cos()).round() as i64, (r * t.sin()).round() as i64)
    }

    fn in_disk(&mut self) -> Point {
        let r = self.radius;
        loop {
            let (x, y) = (self.rng.random_range(-r..=r), self.rng.random_range(-r..=r));
            if (x as i128) * (x as i128) + (y as i128) * (y as i128) <= (r as i128) * (r as i128) {
                return Point::new(x, y);
            }
        }
    }

    fn convex(&mut self, n: usize) -> Result<PointSet> {
        loop {
            let pts: Vec<Point> = (0..n).map(|_| self.on_circle()).collect();
            if let Ok(set) = PointSet::new(pts) {
                if n < 3 || convex_hull(&set)?.interior.is_empty() {
                    return Ok(set);
                }
            }
            self.reject()?;
        }
    }

    /// Adds disk samples one at a time, rejecting any that would break
    /// distinctness or general position.
    fn disk(&mut self, n: usize) -> Result<PointSet> {
        let mut pts: Vec<Point> = Vec::with_capacity(n);
        while pts.len() < n {
            let c = self.in_disk();
            if fits(&pts, c) {
                pts.push(c);
            } else {
                self.reject()?;
            }
        }
        PointSet::new(pts)
    }

    /// `n - 1` points in convex position on the circle plus one disk sample
    /// inside their hull.
    fn one_interior(&mut self, n: usize) -> Result<PointSet> {
        loop {
            let rim = self.convex(n - 1)?;
            let hull = convex_hull(&rim)?;
            for _ in 0..64 {
                let c = self.in_disk();
                if fits(rim.points(), c) && inside_convex(rim.points(), &hull.hull, c) {
                    let mut pts = rim.points().to_vec();
                    pts.push(c);
                    return PointSet::new(pts);
                }
                self.reject()?;
            }
        }
    }
}

fn fits(pts: &[Point], c: Point) -> bool {
    if pts.contains(&c) {
        return false;
    }
    for (i, &a) in pts.iter().enumerate() {
        for &b in &pts[i + 1..] {
            if orient(a, b, c) == Orientation::Collinear {
                return false;
            }
        }
    }
    true
}

fn inside_convex(pts: &[Point], hull: &[usize], c: Point) -> bool {
    (0..hull.len()).all(|i| orient(pts[hull[i]], pts[hull[(i + 1) % hull.len()]], c) == Orientation::Clockwise)
}
