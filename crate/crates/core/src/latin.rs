//! Latin squares as proper edge-colorings of complete bipartite hosts.
//!
//! An order-`n` Latin square is exactly a proper `n`-edge-coloring of
//! `K_{n,n}`: rows form one part, columns the other, and the cell symbol is
//! the color of the row-column edge. A transversal of the square (one cell
//! per row and column, all symbols distinct) is exactly a rainbow perfect
//! matching in that coloring.
//!
//! Symbols are normalized to `0..n` preserving their value order at
//! construction, so squares already using `0..n` round-trip unchanged.

use crate::error::{Error, Result};
use crate::host::{ColoredHost, HostShape, Vertex};

/// A validated Latin square with symbols `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatinSquare {
    n: usize,
    /// Row-major cells, each in `0..n`.
    cells: Vec<u32>,
}

impl LatinSquare {
    /// Validates and normalizes a matrix of symbols into a Latin square.
    pub fn new(rows: Vec<Vec<u32>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::NotLatin("empty matrix".into()));
        }
        if let Some(i) = rows.iter().position(|r| r.len() != n) {
            return Err(Error::NotLatin(format!(
                "row {i} has {} cells, expected {n}",
                rows[i].len()
            )));
        }
        let mut symbols: Vec<u32> = rows.iter().flatten().copied().collect();
        symbols.sort_unstable();
        symbols.dedup();
        if symbols.len() != n {
            return Err(Error::NotLatin(format!(
                "{} distinct symbols in an order-{n} square",
                symbols.len()
            )));
        }
        let relabel = |s: u32| symbols.binary_search(&s).unwrap() as u32;
        let cells: Vec<u32> = rows.iter().flatten().map(|&s| relabel(s)).collect();
        for i in 0..n {
            let mut row_seen = vec![false; n];
            let mut col_seen = vec![false; n];
            for j in 0..n {
                let rs = cells[i * n + j] as usize;
                if std::mem::replace(&mut row_seen[rs], true) {
                    return Err(Error::NotLatin(format!(
                        "row {i} repeats symbol {}",
                        symbols[rs]
                    )));
                }
                let cs = cells[j * n + i] as usize;
                if std::mem::replace(&mut col_seen[cs], true) {
                    return Err(Error::NotLatin(format!(
                        "column {i} repeats symbol {}",
                        symbols[cs]
                    )));
                }
            }
        }
        Ok(LatinSquare { n, cells })
    }

    /// The cyclic square `L[i][j] = (i + j) mod n`.
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::NotLatin("order must be >= 1".into()));
        }
        let cells = (0..n)
            .flat_map(|i| (0..n).map(move |j| ((i + j) % n) as u32))
            .collect();
        Ok(LatinSquare { n, cells })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// Symbol at row `i`, column `j`.
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.cells[i * self.n + j]
    }

    /// Parses comma-separated rows, one row per line. Blank lines and
    /// surrounding whitespace are ignored; symbols need not be `0`-based.
    pub fn from_csv(text: &str) -> Result<Self> {
        let mut rows = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let row = line
                .split(',')
                .map(|f| {
                    f.trim().parse::<u32>().map_err(|_| {
                        Error::Parse(format!("line {}: bad symbol {f:?}", lineno + 1))
                    })
                })
                .collect::<Result<Vec<u32>>>()?;
            rows.push(row);
        }
        LatinSquare::new(rows)
    }

    /// Serializes to the CSV format accepted by [`Self::from_csv`].
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| self.get(i, j).to_string()).collect();
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }

    /// The square as a proper edge-coloring of `K_{n,n}`: rows are part 0,
    /// columns part 1, and edge `{i, n+j}` gets color `L[i][j]`.
    pub fn to_coloring(&self) -> ColoredHost {
        let n = self.n as u32;
        let shape = HostShape::Multipartite { m: 2, n };
        ColoredHost::from_fn(shape, |t| self.get(t[0] as usize, (t[1] - n) as usize) as u64)
            .expect("K_{n,n} color table fits")
    }

    /// Reads a square back out of a 2-part host coloring; errors `not-latin`
    /// when the coloring does not satisfy the Latin property.
    pub fn from_coloring(host: &ColoredHost) -> Result<Self> {
        let HostShape::Multipartite { m: 2, n } = host.shape() else {
            return Err(Error::InvalidShape(
                "expected a 2-part multipartite host".into(),
            ));
        };
        let rows = (0..n)
            .map(|i| (0..n).map(|j| host.color_pair(i, n + j)).collect())
            .collect();
        LatinSquare::new(rows)
    }

    /// Searches for a transversal: one cell per row, no two sharing a column
    /// or a symbol. Returns the column chosen in each row. Uses backtracking
    /// over rows with column/symbol bitmasks.
    pub fn transversal(&self) -> Result<Option<Vec<usize>>> {
        if self.n > 64 {
            return Err(Error::TooLarge(format!(
                "transversal search supports order <= 64, got {}",
                self.n
            )));
        }
        let mut cols = Vec::with_capacity(self.n);
        if self.transversal_rec(0, 0, 0, &mut cols) {
            Ok(Some(cols))
        } else {
            Ok(None)
        }
    }

    fn transversal_rec(
        &self,
        row: usize,
        used_cols: u64,
        used_syms: u64,
        cols: &mut Vec<usize>,
    ) -> bool {
        if row == self.n {
            return true;
        }
        for j in 0..self.n {
            let sym = self.get(row, j) as u64;
            if used_cols & (1 << j) == 0 && used_syms & (1 << sym) == 0 {
                cols.push(j);
                if self.transversal_rec(row + 1, used_cols | 1 << j, used_syms | 1 << sym, cols) {
                    return true;
                }
                cols.pop();
            }
        }
        false
    }

    /// The transversal as a matching in the `K_{n,n}` host: pairs
    /// `(row vertex, column vertex)` with column vertices offset by `n`.
    pub fn transversal_edges(&self, cols: &[usize]) -> Vec<(Vertex, Vertex)> {
        cols.iter()
            .enumerate()
            .map(|(i, &j)| (i as Vertex, (self.n + j) as Vertex))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_is_latin() {
        for n in 1..=7 {
            let sq = LatinSquare::cyclic(n).unwrap();
            assert_eq!(sq.order(), n);
            // Re-validate through the public constructor.
            let rows: Vec<Vec<u32>> = (0..n)
                .map(|i| (0..n).map(|j| sq.get(i, j)).collect())
                .collect();
            assert!(LatinSquare::new(rows).is_ok());
        }
    }

    #[test]
    fn rejects_non_latin() {
        assert!(matches!(
            LatinSquare::new(vec![vec![0, 1], vec![0, 1]]),
            Err(Error::NotLatin(_))
        ));
        assert!(LatinSquare::new(vec![vec![0, 0], vec![1, 1]]).is_err());
        assert!(LatinSquare::new(vec![vec![0, 1, 2], vec![1, 2, 0]]).is_err());
        assert!(LatinSquare::new(vec![]).is_err());
    }

    #[test]
    fn symbols_normalize_order_preserving() {
        // Symbols {3, 7, 9} relabel to {0, 1, 2}.
        let sq = LatinSquare::new(vec![vec![3, 7, 9], vec![7, 9, 3], vec![9, 3, 7]]).unwrap();
        assert_eq!(sq.get(0, 0), 0);
        assert_eq!(sq.get(0, 1), 1);
        assert_eq!(sq.get(0, 2), 2);
    }

    #[test]
    fn csv_roundtrip() {
        let sq = LatinSquare::cyclic(4).unwrap();
        let parsed = LatinSquare::from_csv(&sq.to_csv()).unwrap();
        assert_eq!(parsed, sq);
        // 1-based symbols parse and normalize.
        let one_based = LatinSquare::from_csv("1,2\n2,1\n").unwrap();
        assert_eq!(one_based, LatinSquare::cyclic(2).unwrap());
        assert!(LatinSquare::from_csv("1,x\n2,1\n").is_err());
    }

    #[test]
    fn coloring_roundtrip_is_identity() {
        for n in 1..=6 {
            let sq = LatinSquare::cyclic(n).unwrap();
            let host = sq.to_coloring();
            assert_eq!(host.num_colors() as usize, n);
            let m = host.measure_boundedness();
            // A Latin coloring of K_{n,n} is exactly 1-locally-bounded.
            assert_eq!(m.k_local, 1);
            assert_eq!(m.k_global as usize, n);
            assert_eq!(LatinSquare::from_coloring(&host).unwrap(), sq);
        }
    }

    #[test]
    fn non_latin_coloring_rejected() {
        let host = ColoredHost::monochromatic(HostShape::Multipartite { m: 2, n: 2 }).unwrap();
        assert!(matches!(
            LatinSquare::from_coloring(&host),
            Err(Error::NotLatin(_))
        ));
    }

    #[test]
    fn cyclic_even_has_no_transversal_odd_does() {
        // Classical fact for cyclic squares: transversals exist iff n is odd.
        let z4 = LatinSquare::cyclic(4).unwrap();
        assert_eq!(z4.transversal().unwrap(), None);
        let z5 = LatinSquare::cyclic(5).unwrap();
        let t = z5.transversal().unwrap().expect("Z_5 has a transversal");
        // Check the transversal property directly.
        let mut cols_seen = [false; 5];
        let mut syms_seen = [false; 5];
        for (i, &j) in t.iter().enumerate() {
            assert!(!std::mem::replace(&mut cols_seen[j], true));
            assert!(!std::mem::replace(
                &mut syms_seen[z5.get(i, j) as usize],
                true
            ));
        }
    }
}
