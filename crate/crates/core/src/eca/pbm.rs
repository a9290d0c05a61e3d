//! Portable bitmap export of trajectories (black = 1).

use std::io::{self, Write};

use super::tape::Tape;

/// Plain-text PBM (`P1`).
pub fn write_pbm_ascii<W: Write>(mut out: W, rows: &[Tape]) -> io::Result<()> {
    let width = rows.first().map_or(0, Tape::width);
    writeln!(out, "P1")?;
    writeln!(out, "{} {}", width, rows.len())?;
    for row in rows {
        let line: String = row.bits().map(|b| if b { '1' } else { '0' }).collect();
        // P1 readers must accept lines up to 70 characters; wrap long rows.
        for chunk in line.as_bytes().chunks(70) {
            out.write_all(chunk)?;
            out.write_all(b"\n")?;
        }
    }
    Ok(())
}

/// Binary PBM (`P4`): rows padded to whole bytes, most significant bit first.
pub fn write_pbm_binary<W: Write>(mut out: W, rows: &[Tape]) -> io::Result<()> {
    let width = rows.first().map_or(0, Tape::width);
    write!(out, "P4\n{} {}\n", width, rows.len())?;
    let mut buf = vec![0u8; width.div_ceil(8)];
    for row in rows {
        buf.fill(0);
        for (i, b) in row.bits().enumerate() {
            if b {
                buf[i / 8] |= 0x80 >> (i % 8);
            }
        }
        out.write_all(&buf)?;
    }
    Ok(())
}
