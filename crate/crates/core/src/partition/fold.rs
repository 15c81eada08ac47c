//! The bijection between planar partitions of degree n and Jones diagrams of degree 2n.
//!
//! Read the points of a planar partition in the order `n' < .. < 1' < 1 < .. < n`
//! and double every position `q` into `2q` and `2q + 1`. A block at positions
//! `q_1 < .. < q_k` becomes the arcs `(2q_j + 1, 2q_{j+1})` together with the
//! outer arc `(2q_1, 2q_k + 1)`. The inverse merges positions joined by arcs.

use super::{Partition, MAX_DEGREE};
use crate::error::{Error, Result};

fn position_to_index(n: usize, q: usize) -> usize {
    if q < n {
        n + (n - 1 - q)
    } else {
        q - n
    }
}

fn index_to_position(n: usize, p: usize) -> usize {
    if p < n {
        n + p
    } else {
        n - 1 - (p - n)
    }
}

/// Sends a planar partition of degree n to a Jones diagram of degree 2n.
pub fn planar_to_jones(x: &Partition) -> Result<Partition> {
    let n = x.degree();
    if 2 * n > MAX_DEGREE {
        return Err(Error::BadDegree(2 * n, MAX_DEGREE));
    }
    if !x.is_planar() {
        return Err(Error::NotMember(format!("{x} is not planar")));
    }
    let m = 2 * n;
    let mut by_block: Vec<Vec<usize>> = vec![Vec::new(); x.block_count()];
    for q in 0..2 * n {
        by_block[x.label(position_to_index(n, q)) as usize].push(q);
    }
    let mut raw = vec![0u8; 2 * m];
    let mut next = 0u8;
    let mut arc = |a: usize, b: usize, raw: &mut Vec<u8>| {
        raw[position_to_index(m, a)] = next;
        raw[position_to_index(m, b)] = next;
        next += 1;
    };
    for qs in &by_block {
        for w in qs.windows(2) {
            arc(2 * w[0] + 1, 2 * w[1], &mut raw);
        }
        arc(2 * qs[0], 2 * qs[qs.len() - 1] + 1, &mut raw);
    }
    Ok(Partition::from_labels(m, &raw))
}

/// The inverse of [`planar_to_jones`].
pub fn jones_to_planar(y: &Partition) -> Result<Partition> {
    let m = y.degree();
    if m % 2 != 0 {
        return Err(Error::Unsupported(format!("Jones degree {m} is odd")));
    }
    let n = m / 2;
    let mut parent: Vec<usize> = (0..2 * n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let blocks = y.blocks();
    for block in &blocks {
        if block.len() != 2 {
            return Err(Error::NotMember(format!("{y} is not a Brauer diagram")));
        }
        let to_pos = |s: i32| {
            let p = if s > 0 { s as usize - 1 } else { m + (-s) as usize - 1 };
            index_to_position(m, p) / 2
        };
        let (a, b) = (find(&mut parent, to_pos(block[0])), find(&mut parent, to_pos(block[1])));
        parent[a] = b;
    }
    let raw: Vec<u8> = (0..2 * n)
        .map(|p| find(&mut parent, index_to_position(n, p)) as u8)
        .collect();
    Ok(Partition::from_labels(n, &raw))
}
