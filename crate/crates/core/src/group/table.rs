//! Raw Cayley table checks and the text table format.
//!
//! Text format: first line is the order `n`; the next `n` lines hold `n`
//! space-separated 0-based indices; optional trailing lines
//! `label <i> <name>` name elements. Blank lines and `#` comments are
//! skipped.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::GroupError;

/// First violated axiom found in a raw table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "defect", rename_all = "snake_case")]
pub enum TableDefect {
    Empty,
    NotSquare { row: usize, len: usize, expected: usize },
    EntryOutOfRange { row: usize, col: usize, value: usize },
    RowNotPermutation { row: usize, repeated: usize },
    ColumnNotPermutation { col: usize, repeated: usize },
    /// `(a·b)·c ≠ a·(b·c)`
    NotAssociative { a: usize, b: usize, c: usize },
    NoIdentity,
    NoInverse { element: usize },
}

impl fmt::Display for TableDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TableDefect::Empty => write!(f, "empty table"),
            TableDefect::NotSquare { row, len, expected } => {
                write!(f, "row {row} has {len} entries, expected {expected}")
            }
            TableDefect::EntryOutOfRange { row, col, value } => {
                write!(f, "entry ({row},{col}) = {value} out of range")
            }
            TableDefect::RowNotPermutation { row, repeated } => {
                write!(f, "row {row} not a permutation ({repeated} repeated)")
            }
            TableDefect::ColumnNotPermutation { col, repeated } => {
                write!(f, "column {col} not a permutation ({repeated} repeated)")
            }
            TableDefect::NotAssociative { a, b, c } => {
                write!(f, "not associative at ({a},{b},{c})")
            }
            TableDefect::NoIdentity => write!(f, "no identity element"),
            TableDefect::NoInverse { element } => write!(f, "element {element} has no inverse"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Validation {
    Pass,
    Fail(TableDefect),
}

impl Validation {
    pub fn is_pass(&self) -> bool {
        matches!(self, Validation::Pass)
    }
}

/// Checks, in order: shape and range, Latin square, associativity, identity,
/// inverses. Reports the first violation.
///
/// Associativity uses Light's test against a generating set of the magma, so
/// the cost is `O(n²·|gens|)` instead of `O(n³)`.
pub fn validate_table(rows: &[Vec<usize>]) -> Validation {
    match check(rows) {
        Ok(()) => Validation::Pass,
        Err(d) => Validation::Fail(d),
    }
}

fn check(rows: &[Vec<usize>]) -> Result<(), TableDefect> {
    let n = rows.len();
    if n == 0 {
        return Err(TableDefect::Empty);
    }
    for (r, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(TableDefect::NotSquare { row: r, len: row.len(), expected: n });
        }
        if let Some((c, &v)) = row.iter().enumerate().find(|(_, &v)| v >= n) {
            return Err(TableDefect::EntryOutOfRange { row: r, col: c, value: v });
        }
    }
    let mut seen = vec![usize::MAX; n];
    for (r, row) in rows.iter().enumerate() {
        for &v in row {
            if seen[v] == r {
                return Err(TableDefect::RowNotPermutation { row: r, repeated: v });
            }
            seen[v] = r;
        }
    }
    seen.fill(usize::MAX);
    for c in 0..n {
        for row in rows {
            let v = row[c];
            if seen[v] == c {
                return Err(TableDefect::ColumnNotPermutation { col: c, repeated: v });
            }
            seen[v] = c;
        }
    }

    let m = |a: usize, b: usize| rows[a][b];
    for &g in &magma_generators(rows) {
        for a in 0..n {
            let ag = m(a, g);
            for b in 0..n {
                if m(ag, b) != m(a, m(g, b)) {
                    return Err(TableDefect::NotAssociative { a, b: g, c: b });
                }
            }
        }
    }

    let e = (0..n)
        .find(|&e| (0..n).all(|x| m(e, x) == x && m(x, e) == x))
        .ok_or(TableDefect::NoIdentity)?;
    for a in 0..n {
        if !(0..n).any(|b| m(a, b) == e && m(b, a) == e) {
            return Err(TableDefect::NoInverse { element: a });
        }
    }
    Ok(())
}

/// Greedy generating set of the table viewed as a magma (closure under the
/// binary operation only). Each pair is multiplied once, so this is `O(n²)`.
fn magma_generators(rows: &[Vec<usize>]) -> Vec<usize> {
    let n = rows.len();
    let mut inside = vec![false; n];
    let mut members: Vec<usize> = Vec::new();
    let mut gens = Vec::new();
    for x in 0..n {
        if inside[x] {
            continue;
        }
        gens.push(x);
        inside[x] = true;
        let mut queue = vec![x];
        while let Some(z) = queue.pop() {
            members.push(z);
            for i in 0..members.len() {
                let w = members[i];
                for p in [rows[z][w], rows[w][z]] {
                    if !inside[p] {
                        inside[p] = true;
                        queue.push(p);
                    }
                }
            }
        }
    }
    gens
}

/// Parses the text table format into rows and optional labels.
pub fn parse_table_text(text: &str) -> Result<(Vec<Vec<usize>>, Vec<String>), GroupError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let syntax = |line: usize, reason: String| GroupError::TableSyntax { line, reason };

    let (first, header) = lines.next().ok_or_else(|| syntax(1, "missing order line".into()))?;
    let n: usize = header.parse().map_err(|_| syntax(first, format!("bad order {header:?}")))?;
    if n == 0 || n > super::MAX_ORDER {
        return Err(syntax(first, format!("order {n} outside 1..={}", super::MAX_ORDER)));
    }
    let mut rows = Vec::with_capacity(n);
    for _ in 0..n {
        let (ln, l) = lines.next().ok_or_else(|| syntax(first, format!("expected {n} rows")))?;
        let row = l
            .split_whitespace()
            .map(|t| t.parse::<usize>().map_err(|_| syntax(ln, format!("bad entry {t:?}"))))
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
    }
    let mut labels: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    for (ln, l) in lines {
        let mut parts = l.splitn(3, char::is_whitespace);
        let (kw, idx, name) = (parts.next(), parts.next(), parts.next());
        match (kw, idx.and_then(|s| s.parse::<usize>().ok()), name) {
            (Some("label"), Some(i), Some(name)) if i < n => labels[i] = name.trim().to_string(),
            _ => return Err(syntax(ln, format!("expected `label <i> <name>`, got {l:?}"))),
        }
    }
    Ok((rows, labels))
}
