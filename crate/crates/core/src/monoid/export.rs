//! Cayley tables and Green's structure in portable formats.

use std::io::Write;

use serde::Serialize;

use super::FiniteMonoid;
use crate::error::{Error, Result};

/// Writes the Cayley table as CSV: a header row of element labels, then one row per left factor.
pub fn cayley_csv<W: Write>(m: &FiniteMonoid, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let io = |e: csv::Error| Error::Parse(e.to_string());
    let mut header = vec![String::new()];
    header.extend(m.elements().iter().map(|x| x.to_string()));
    w.write_record(&header).map_err(io)?;
    for i in 0..m.len() as u32 {
        let mut row = vec![m.element(i).to_string()];
        row.extend((0..m.len() as u32).map(|j| m.mul(i, j).to_string()));
        w.write_record(&row).map_err(io)?;
    }
    w.flush().map_err(|e| Error::Parse(e.to_string()))
}

#[derive(Serialize)]
pub struct JClassSummary {
    pub id: u32,
    pub size: usize,
    pub rank: usize,
    pub l_classes: usize,
    pub r_classes: usize,
    pub h_size: usize,
    pub regular: bool,
    pub idempotents: usize,
    pub covered: bool,
    pub above: Vec<u32>,
}

#[derive(Serialize)]
pub struct GreensSummary {
    pub order: usize,
    pub units: usize,
    pub idempotents: usize,
    pub j_classes: Vec<JClassSummary>,
}

pub fn greens_summary(m: &FiniteMonoid) -> GreensSummary {
    let g = m.greens();
    let covered = g.covered_classes();
    let j_classes = g
        .top_down()
        .iter()
        .map(|&j| {
            let c = g.j_class(j);
            JClassSummary {
                id: j,
                size: c.elements.len(),
                rank: c.rank,
                l_classes: c.l_classes.len(),
                r_classes: c.r_classes.len(),
                h_size: c.h_size,
                regular: c.regular,
                idempotents: c.idempotents.len(),
                covered: covered.contains(&j),
                above: g.up_set(j).ones().map(|a| a as u32).filter(|&a| a != j).collect(),
            }
        })
        .collect::<Vec<_>>();
    GreensSummary {
        order: m.len(),
        units: g.units().len(),
        idempotents: j_classes.iter().map(|c| c.idempotents).sum(),
        j_classes,
    }
}
