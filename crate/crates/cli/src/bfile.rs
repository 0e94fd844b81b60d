//! OEIS b-file output: one `n value` pair per line, increasing `n`.

use std::io::{self, Write};

use kdiv_core::BigCount;

pub fn write_bfile<W: Write>(out: &mut W, terms: &[(u32, BigCount)]) -> io::Result<()> {
    for (n, value) in terms {
        writeln!(out, "{n} {value}")?;
    }
    Ok(())
}
