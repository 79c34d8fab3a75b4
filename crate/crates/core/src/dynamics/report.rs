use std::fmt;

use num_complex::Complex;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use super::sign::SignTriple;
use super::Eigenpair;
use crate::trig::{fmt_rational, RationalTorusPoint, TorusPoint};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Classification {
    Saddle,
    Center,
    SpiralAttractor,
    SpiralRepulsor,
    AttractingNode,
    RepellingNode,
    Degenerate,
}

impl Classification {
    pub fn is_attracting(self) -> bool {
        matches!(
            self,
            Classification::SpiralAttractor | Classification::AttractingNode
        )
    }

    pub fn is_spiral(self) -> bool {
        matches!(
            self,
            Classification::SpiralAttractor | Classification::SpiralRepulsor
        )
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Classification::Saddle => "Saddle",
            Classification::Center => "Center",
            Classification::SpiralAttractor => "SpiralAttractor",
            Classification::SpiralRepulsor => "SpiralRepulsor",
            Classification::AttractingNode => "AttractingNode",
            Classification::RepellingNode => "RepellingNode",
            Classification::Degenerate => "Degenerate",
        }
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Lattice family of a critical point of a basis mode (or a perturbation of one).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum PointType {
    I,
    II,
    Other,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Location {
    Exact(RationalTorusPoint),
    Refined(TorusPoint),
}

impl Location {
    pub fn point(&self) -> TorusPoint {
        match self {
            Location::Exact(r) => r.to_point(),
            Location::Refined(p) => *p,
        }
    }

    pub fn exact(&self) -> Option<&RationalTorusPoint> {
        match self {
            Location::Exact(r) => Some(r),
            Location::Refined(_) => None,
        }
    }
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Location::Exact(r) => r.fmt(f),
            Location::Refined(p) => p.fmt(f),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CriticalPointReport {
    pub location: Location,
    pub lattice_indices: Option<(i64, i64)>,
    pub point_type: PointType,
    pub classification: Classification,
    pub eigen: Eigenpair,
    /// Number of negative eigenvalues of the plain (symmetric) Hessian.
    pub morse_index: u8,
    pub trace_sign: i8,
    pub signs: Option<SignTriple>,
    pub note: Option<String>,
}

impl CriticalPointReport {
    pub fn point(&self) -> TorusPoint {
        self.location.point()
    }
}

struct LocationJson<'a>(&'a Location);

impl Serialize for LocationJson<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(2))?;
        match self.0 {
            Location::Exact(r) => {
                m.serialize_entry("theta1", &fmt_rational(&r.theta1))?;
                m.serialize_entry("theta2", &fmt_rational(&r.theta2))?;
            }
            Location::Refined(p) => {
                m.serialize_entry("theta1", &p.theta1)?;
                m.serialize_entry("theta2", &p.theta2)?;
            }
        }
        m.end()
    }
}

fn pair(c: &Complex<f64>) -> [f64; 2] {
    [c.re, c.im]
}

impl Serialize for CriticalPointReport {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(None)?;
        m.serialize_entry("location", &LocationJson(&self.location))?;
        m.serialize_entry("exact", &matches!(self.location, Location::Exact(_)))?;
        m.serialize_entry(
            "lattice_indices",
            &self.lattice_indices.map(|(a, b)| [a, b]),
        )?;
        m.serialize_entry("point_type", &self.point_type)?;
        m.serialize_entry("classification", &self.classification)?;
        m.serialize_entry("eigenvalues", &[pair(&self.eigen[0]), pair(&self.eigen[1])])?;
        m.serialize_entry("morse_index", &self.morse_index)?;
        m.serialize_entry("trace_sign", &self.trace_sign)?;
        if let Some(t) = &self.signs {
            m.serialize_entry("signs", t)?;
        }
        if let Some(n) = &self.note {
            m.serialize_entry("note", n)?;
        }
        m.end()
    }
}
