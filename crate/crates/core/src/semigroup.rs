//! Finite semigroups given by multiplication tables. Elements are the
//! indices `0..size`; `table[a][b]` is the product `ab`.

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteSemigroup {
    table: Vec<Vec<usize>>,
    unit: Option<usize>,
}

impl FiniteSemigroup {
    /// Validates a multiplication table and detects the unit.
    pub fn new(table: Vec<Vec<usize>>) -> Result<Self> {
        let m = table.len();
        if m == 0 {
            return Err(Error::InvalidParameter("a semigroup needs at least one element".into()));
        }
        for (a, row) in table.iter().enumerate() {
            if row.len() != m {
                return Err(Error::Shape(format!(
                    "row {a} of the multiplication table has length {}, expected {m}",
                    row.len()
                )));
            }
            if let Some((b, &v)) = row.iter().enumerate().find(|(_, &v)| v >= m) {
                return Err(Error::OutOfRange {
                    row: a,
                    col: b,
                    value: v,
                    size: m,
                });
            }
        }
        for a in 0..m {
            for b in 0..m {
                for c in 0..m {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::NotAssociative(a, b, c));
                    }
                }
            }
        }
        let unit = (0..m).find(|&e| (0..m).all(|a| table[e][a] == a && table[a][e] == a));
        Ok(FiniteSemigroup { table, unit })
    }

    pub fn trivial() -> Self {
        Self::new(vec![vec![0]]).expect("trivial monoid")
    }

    pub fn cyclic(m: usize) -> Result<Self> {
        check_size(m)?;
        Self::new((0..m).map(|a| (0..m).map(|b| (a + b) % m).collect()).collect())
    }

    pub fn left_zero(m: usize) -> Result<Self> {
        check_size(m)?;
        Self::new((0..m).map(|a| vec![a; m]).collect())
    }

    pub fn right_zero(m: usize) -> Result<Self> {
        check_size(m)?;
        Self::new((0..m).map(|_| (0..m).collect()).collect())
    }

    /// `{1, e}` with `e e = e`; element 0 is the unit.
    pub fn boolean_monoid() -> Self {
        Self::new(vec![vec![0, 1], vec![1, 1]]).expect("boolean monoid")
    }

    /// Catalog lookup: `trivial`, `cyclic`, `left_zero`, `right_zero`,
    /// `boolean_monoid`. The parameter is the order for the families.
    pub fn builtin(name: &str, parameter: Option<usize>) -> Result<Self> {
        let need = || parameter.ok_or_else(|| Error::InvalidParameter(format!("{name} needs an order")));
        match name {
            "trivial" => Ok(Self::trivial()),
            "cyclic" => Self::cyclic(need()?),
            "left_zero" => Self::left_zero(need()?),
            "right_zero" => Self::right_zero(need()?),
            "boolean_monoid" => Ok(Self::boolean_monoid()),
            _ => Err(Error::Unknown {
                what: "semigroup",
                name: name.to_string(),
            }),
        }
    }

    pub fn size(&self) -> usize {
        self.table.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    /// Product of a word; `None` for the empty word.
    pub fn product(&self, word: &[usize]) -> Option<usize> {
        let (&first, rest) = word.split_first()?;
        Some(rest.iter().fold(first, |acc, &b| self.table[acc][b]))
    }

    pub fn unit(&self) -> Option<usize> {
        self.unit
    }

    pub fn require_unit(&self) -> Result<usize> {
        self.unit.ok_or(Error::MissingUnit)
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn is_trivial(&self) -> bool {
        self.size() == 1
    }
}

fn check_size(m: usize) -> Result<()> {
    if m < 1 {
        return Err(Error::InvalidParameter("semigroup order must be at least 1".into()));
    }
    Ok(())
}
