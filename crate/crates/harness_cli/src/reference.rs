use serde::{Deserialize, Serialize};

const DATA: &str = include_str!("../data/reference_counts.toml");

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReferenceRow {
    pub mn: f64,
    /// Cells per unit length, mesh table only.
    #[serde(default)]
    pub cells_per_unit: Option<usize>,
    pub classical: usize,
    pub new: usize,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
pub struct ReferenceCounts {
    pub table1: Vec<ReferenceRow>,
    pub table2: Vec<ReferenceRow>,
    pub table3: Vec<ReferenceRow>,
    pub mesh: Vec<ReferenceRow>,
}

impl ReferenceCounts {
    pub fn load() -> Self {
        toml::from_str(DATA).expect("bundled reference data parses")
    }

    pub fn table(&self, name: &str) -> Option<&[ReferenceRow]> {
        match name {
            "table1" => Some(&self.table1),
            "table2" => Some(&self.table2),
            "table3" => Some(&self.table3),
            "mesh" => Some(&self.mesh),
            _ => None,
        }
    }

    pub fn lookup(&self, table: &str, mn: f64, cells_per_unit: Option<usize>) -> Option<ReferenceRow> {
        self.table(table)?
            .iter()
            .find(|r| (r.mn - mn).abs() < 1e-12 && (cells_per_unit.is_none() || r.cells_per_unit == cells_per_unit))
            .copied()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_tables_have_expected_shape() {
        let r = ReferenceCounts::load();
        assert_eq!((r.table1.len(), r.table2.len(), r.table3.len(), r.mesh.len()), (10, 10, 10, 6));
        assert_eq!(r.lookup("table1", 0.001, None).map(|x| (x.classical, x.new)), Some((67, 18)));
        assert_eq!(r.lookup("mesh", 0.1, Some(40)).map(|x| x.new), Some(16));
        assert!(r.table1.iter().all(|x| x.new % 2 == 0));
    }
}
