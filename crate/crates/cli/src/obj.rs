//! ASCII Wavefront OBJ output.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use rmfgeom::ruled::Mesh;

use crate::error::CliError;
use crate::format::g17;

/// Write `mesh` as OBJ: a header comment, `v x y z` lines in vertex order
/// (17 significant digits), `# singular s=<value>` before each flagged
/// row, then 1-based `f` quads.
pub fn write_obj(mesh: &Mesh, header: &str, out: &mut impl Write) -> io::Result<()> {
    writeln!(out, "# {header}")?;
    if mesh.is_empty() {
        return Ok(());
    }
    let mut flagged = mesh.singular_rows.iter().peekable();
    for (i, v) in mesh.vertices.iter().enumerate() {
        if mesh.cols > 0 && i % mesh.cols == 0 {
            let row = i / mesh.cols;
            while let Some(r) = flagged.next_if(|r| r.row <= row) {
                if r.row == row {
                    writeln!(out, "# singular s={}", g17(r.s))?;
                }
            }
        }
        writeln!(out, "v {} {} {}", g17(v.x), g17(v.y), g17(v.z))?;
    }
    for f in &mesh.faces {
        writeln!(out, "f {} {} {} {}", f[0] + 1, f[1] + 1, f[2] + 1, f[3] + 1)?;
    }
    Ok(())
}

pub fn write_obj_file(mesh: &Mesh, header: &str, path: &Path) -> Result<(), CliError> {
    let file = File::create(path).map_err(|e| CliError::io(path, e))?;
    let mut out = BufWriter::new(file);
    write_obj(mesh, header, &mut out).and_then(|_| out.flush()).map_err(|e| CliError::io(path, e))
}

/// Vertex positions from OBJ text, in order.
pub fn parse_vertices(text: &str) -> Vec<[f64; 3]> {
    text.lines()
        .filter_map(|l| l.strip_prefix("v "))
        .map(|rest| {
            let mut it = rest.split_whitespace().map(|t| t.parse::<f64>().unwrap_or(f64::NAN));
            [it.next().unwrap_or(f64::NAN), it.next().unwrap_or(f64::NAN), it.next().unwrap_or(f64::NAN)]
        })
        .collect()
}
