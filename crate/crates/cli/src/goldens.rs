//! Golden files for the six reference tables, embedded at compile time.
//! `table <T> --check` recomputes the table and diffs against these bytes.

use crate::tables::TableSelector;

pub fn golden(selector: TableSelector) -> &'static str {
    match selector {
        TableSelector::T1 => include_str!("../goldens/table1.tex"),
        TableSelector::T2 => include_str!("../goldens/table2.tex"),
        TableSelector::T3 => include_str!("../goldens/table3.csv"),
        TableSelector::T4 => include_str!("../goldens/table4.csv"),
        TableSelector::T5 => include_str!("../goldens/table5.csv"),
        TableSelector::T6 => include_str!("../goldens/table6.json"),
    }
}
