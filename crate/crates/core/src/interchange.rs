//! JSON interchange for blocks and block matrices.
//!
//! A block is
//!
//! ```json
//! {"n": 1, "n'": 1, "p": 2, "p'": 1, "entries": [["(2)", "(1)", "2/1"]]}
//! ```
//!
//! listing nonzero entries only. Rationals are `"num/den"` strings, floats
//! are JSON numbers. A block matrix is `{"n", "n'", "blocks": [...]}` where
//! each block record carries `p`, `p'` and `entries`.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::block_matrix::BlockMatrix;
use crate::error::{Error, Result};
use crate::graded_matrix::GradedMatrix;
use crate::multiindex::Multiindex;
use crate::scalar::Scalar;

type Triple = (String, String, Value);

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BlockRecord {
    n: usize,
    #[serde(rename = "n'")]
    n_col: usize,
    p: u32,
    #[serde(rename = "p'")]
    p_col: u32,
    entries: Vec<Triple>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InnerBlock {
    p: u32,
    #[serde(rename = "p'")]
    p_col: u32,
    entries: Vec<Triple>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BlockMatrixRecord {
    n: usize,
    #[serde(rename = "n'")]
    n_col: usize,
    blocks: Vec<InnerBlock>,
}

fn triples<S: Scalar>(block: &GradedMatrix<S>) -> Vec<Triple> {
    block
        .nonzero_entries()
        .into_iter()
        .map(|(r, c, v)| (r.to_string(), c.to_string(), v.to_interchange()))
        .collect()
}

fn fill<S: Scalar>(
    n: usize,
    n_col: usize,
    p: u32,
    p_col: u32,
    entries: &[Triple],
) -> Result<GradedMatrix<S>> {
    let mut block = GradedMatrix::zeros(n, n_col, p, p_col)?;
    for (r, c, v) in entries {
        let row: Multiindex = r.parse()?;
        let col: Multiindex = c.parse()?;
        let value =
            S::from_interchange(v).ok_or_else(|| Error::Interchange(format!("bad scalar {v}")))?;
        if block.get_at(&row, &col).is_none() {
            return Err(Error::Interchange(format!(
                "entry {r},{c} outside M_{{{n},{n_col}}}({p},{p_col})"
            )));
        }
        block.set_at(&row, &col, value)?;
    }
    Ok(block)
}

fn deserialize<T: for<'de> Deserialize<'de>>(value: &Value) -> Result<T> {
    T::deserialize(value).map_err(|e| Error::Interchange(e.to_string()))
}

pub fn block_to_json<S: Scalar>(block: &GradedMatrix<S>) -> Value {
    let rec = BlockRecord {
        n: block.row_arity(),
        n_col: block.col_arity(),
        p: block.row_degree(),
        p_col: block.col_degree(),
        entries: triples(block),
    };
    serde_json::to_value(rec).expect("plain data")
}

pub fn block_from_json<S: Scalar>(value: &Value) -> Result<GradedMatrix<S>> {
    let rec: BlockRecord = deserialize(value)?;
    fill(rec.n, rec.n_col, rec.p, rec.p_col, &rec.entries)
}

pub fn block_matrix_to_json<S: Scalar>(m: &BlockMatrix<S>) -> Value {
    let rec = BlockMatrixRecord {
        n: m.row_arity(),
        n_col: m.col_arity(),
        blocks: m
            .blocks()
            .map(|b| InnerBlock {
                p: b.row_degree(),
                p_col: b.col_degree(),
                entries: triples(b),
            })
            .collect(),
    };
    serde_json::to_value(rec).expect("plain data")
}

pub fn block_matrix_from_json<S: Scalar>(value: &Value) -> Result<BlockMatrix<S>> {
    let rec: BlockMatrixRecord = deserialize(value)?;
    let mut m = BlockMatrix::zero(rec.n, rec.n_col);
    for b in &rec.blocks {
        if m.block(b.p, b.p_col).is_some() {
            return Err(Error::Interchange(format!(
                "block ({},{}) listed twice",
                b.p, b.p_col
            )));
        }
        m.add_block(fill(rec.n, rec.n_col, b.p, b.p_col, &b.entries)?)?;
    }
    Ok(m)
}

pub fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::Interchange(e.to_string()))
}

pub fn to_pretty(value: &Value) -> String {
    serde_json::to_string_pretty(value).expect("plain data")
}

/// One line per nonzero entry, block by block.
pub fn block_matrix_text<S: Scalar>(m: &BlockMatrix<S>) -> String {
    let mut out = format!("M_{{{},{}}}\n", m.row_arity(), m.col_arity());
    for b in m.blocks() {
        out.push_str(&format!("block ({},{})\n", b.row_degree(), b.col_degree()));
        for (r, c, v) in b.nonzero_entries() {
            out.push_str(&format!("  {r} {c} {v}\n"));
        }
    }
    out
}
