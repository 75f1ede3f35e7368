//! CSV tables of rotation-minimizing frames and natural curvatures.

use std::io::{self, Write};

use rmfgeom::framing::RmfApparatus;

use crate::format::g17;

pub const HEADER: &str = "s,Tx,Ty,Tz,N1x,N1y,N1z,N2x,N2y,N2z,kappa1,kappa2";

/// One row per grid node.
pub fn write_frames_csv(rmf: &RmfApparatus, out: &mut impl Write) -> io::Result<()> {
    writeln!(out, "{HEADER}")?;
    for (i, &s) in rmf.grid.nodes().iter().enumerate() {
        let mut fields = Vec::with_capacity(12);
        fields.push(g17(s));
        for v in [rmf.t[i], rmf.n1[i], rmf.n2[i]] {
            fields.extend(v.to_array().map(g17));
        }
        fields.push(g17(rmf.kappa1[i]));
        fields.push(g17(rmf.kappa2[i]));
        writeln!(out, "{}", fields.join(","))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rmfgeom::catalog;
    use rmfgeom::framing::{rmf_propagate, OrthoFrame};
    use rmfgeom::{SampledGrid, Tolerances};

    #[test]
    fn helix_table_shape() {
        let helix = catalog::helix();
        let grid = SampledGrid::uniform(helix.domain(), 16).unwrap();
        let (t, n, _) = catalog::helix_frenet(0.0);
        let rmf = rmf_propagate(&*helix, OrthoFrame::from_tangent_normal(t, n), &grid, &Tolerances::default()).unwrap();
        let mut buf = Vec::new();
        write_frames_csv(&rmf, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<_> = text.lines().collect();
        assert_eq!(lines.len(), 17);
        assert_eq!(lines[0], HEADER);
        assert!(lines[1..].iter().all(|l| l.split(',').count() == 12));
        assert!(lines[1].starts_with("0,"));
    }
}
