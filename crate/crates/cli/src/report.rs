//! JSON analysis report.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use rmfgeom::legendre::{FrameResiduals, ValidationReport};
use rmfgeom::ruled::SurfaceKind;
use rmfgeom::singular::{ConeApex, Diagnostics, ScanResult, SingularClass, SingularPoint};
use rmfgeom::{Tolerances, Vec3};
use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;

use crate::error::CliError;

/// Map from kind tag to value that serializes in insertion order.
#[derive(Debug, Clone, PartialEq)]
pub struct KindMap<T>(pub Vec<(SurfaceKind, T)>);

impl<T: Serialize> Serialize for KindMap<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k.tag(), v)?;
        }
        map.end()
    }
}

impl<T> Default for KindMap<T> {
    fn default() -> Self {
        KindMap(Vec::new())
    }
}

impl<T> KindMap<T> {
    pub fn get(&self, kind: SurfaceKind) -> Option<&T> {
        self.0.iter().find(|(k, _)| *k == kind).map(|(_, v)| v)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InputEcho {
    pub example: String,
    pub variant: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub points: Option<String>,
    pub renormalized: bool,
    pub domain: [f64; 2],
    pub grid: usize,
    pub u_domain: [f64; 2],
    pub kinds: Vec<SurfaceKind>,
    pub tolerances: Tolerances,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DevelopabilityEntry {
    pub max_defect: f64,
    pub developable: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FrameChecks {
    pub validation: ValidationReport,
    pub max_orthonormality_defect: f64,
    pub max_handedness_defect: f64,
    pub max_abs_l: f64,
    pub legendre: bool,
    pub residuals: FrameResiduals,
}

/// One classified point. Cuspidal-edge arcs carry `arc` and `in_u_domain`;
/// cones carry `apex` and `ruling_distance`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Entry {
    pub s0: f64,
    pub u0: Option<f64>,
    pub class: SingularClass,
    pub location: Option<Vec3>,
    pub diagnostics: Diagnostics,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub arc: Option<[f64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub in_u_domain: Option<Vec<[f64; 2]>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub apex: Option<Vec3>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ruling_distance: Option<f64>,
}

impl Entry {
    pub fn point(p: &SingularPoint) -> Self {
        Entry {
            s0: p.s0,
            u0: p.u0,
            class: p.class,
            location: p.location,
            diagnostics: p.diagnostics,
            arc: None,
            in_u_domain: None,
            apex: None,
            ruling_distance: None,
        }
    }
}

/// Entries of a scan sorted by `s0`; `apex` is attached to cone events.
pub fn entries(scan: &ScanResult, apex: Option<&ConeApex>) -> Vec<Entry> {
    let mut out: Vec<Entry> = scan
        .events
        .iter()
        .map(|p| {
            let mut e = Entry::point(p);
            if let (SingularClass::Cone, Some(a)) = (p.class, apex) {
                e.apex = Some(a.apex);
                e.ruling_distance = Some(a.max_ruling_distance);
            }
            e
        })
        .collect();
    out.extend(scan.edge_arcs.iter().map(|a| {
        let mut e = Entry::point(&a.representative);
        e.arc = Some([a.s_lo, a.s_hi]);
        e.in_u_domain = Some(a.in_extent.clone());
        e
    }));
    out.sort_by(|a, b| a.s0.total_cmp(&b.s0));
    out
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub input: InputEcho,
    pub developability: KindMap<DevelopabilityEntry>,
    pub singularities: KindMap<Vec<Entry>>,
    pub frame_checks: FrameChecks,
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn write(&self, out: &mut dyn Write) -> io::Result<()> {
        out.write_all(self.to_json().as_bytes())
    }
}

pub fn write_report(report: &Report, path: &Path) -> Result<(), CliError> {
    let file = File::create(path).map_err(|e| CliError::io(path, e))?;
    let mut out = BufWriter::new(file);
    report.write(&mut out).and_then(|_| out.flush()).map_err(|e| CliError::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kind_map_keeps_order() {
        let m = KindMap(vec![(SurfaceKind::VGamma, 1), (SurfaceKind::BetaGamma, 2)]);
        assert_eq!(serde_json::to_string(&m).unwrap(), r#"{"v_gamma":1,"beta_gamma":2}"#);
        assert_eq!(m.get(SurfaceKind::BetaGamma), Some(&2));
    }

    #[test]
    fn class_names_are_snake_case() {
        for c in SingularClass::ALL {
            assert_eq!(serde_json::to_string(&c).unwrap(), format!("\"{}\"", c.name()));
        }
    }
}
