//! Reference enumerations transcribed by hand. Columns list the entries
//! from the highest `(state, read)` pair down to `(Q0, R0)`.

pub struct Row {
    pub program: u128,
    pub entries: &'static [&'static str],
    pub tape: &'static str,
}

macro_rules! rows {
    ($(($p:expr, [$($e:expr),*], $t:expr)),* $(,)?) => {
        &[$(Row { program: $p, entries: &[$($e),*], tape: $t }),*]
    };
}

/// 1 state, 1 symbol, one cell, one cycle.
pub const UNARY_SINGLE: &[Row] = rows![
    (0, ["Q0 Ml W0"], "0"),
    (1, ["Q0 Mr W0"], "0"),
];

/// 2 states, 1 symbol, four cells, four cycles. Columns: Q1R0, Q0R0.
pub const UNARY_TWO_STATE: &[Row] = rows![
    (0, ["Q0 Ml W0", "Q0 Ml W0"], "0000"),
    (1, ["Q0 Ml W0", "Q0 Mr W0"], "0000"),
    (2, ["Q0 Ml W0", "Q1 Ml W0"], "0000"),
    (3, ["Q0 Ml W0", "Q1 Mr W0"], "00oo"),
    (4, ["Q0 Mr W0", "Q0 Ml W0"], "0000"),
    (5, ["Q0 Mr W0", "Q0 Mr W0"], "0000"),
    (6, ["Q0 Mr W0", "Q1 Ml W0"], "0oo0"),
    (7, ["Q0 Mr W0", "Q1 Mr W0"], "0000"),
    (8, ["Q1 Ml W0", "Q0 Ml W0"], "0000"),
    (9, ["Q1 Ml W0", "Q0 Mr W0"], "0000"),
    (10, ["Q1 Ml W0", "Q1 Ml W0"], "0000"),
    (11, ["Q1 Ml W0", "Q1 Mr W0"], "00o0"),
    (12, ["Q1 Mr W0", "Q0 Ml W0"], "0000"),
    (13, ["Q1 Mr W0", "Q0 Mr W0"], "0000"),
    (14, ["Q1 Mr W0", "Q1 Ml W0"], "00o0"),
    (15, ["Q1 Mr W0", "Q1 Mr W0"], "0000"),
];

/// 1 state, 2 symbols, four cells, four cycles. Columns: Q0R1, Q0R0.
pub const BINARY_SINGLE_STATE: &[Row] = rows![
    (0, ["Q0 Ml W0", "Q0 Ml W0"], "0000"),
    (1, ["Q0 Ml W0", "Q0 Ml W1"], "1111"),
    (2, ["Q0 Ml W0", "Q0 Mr W0"], "0000"),
    (3, ["Q0 Ml W0", "Q0 Mr W1"], "1111"),
    (4, ["Q0 Ml W1", "Q0 Ml W0"], "0000"),
    (5, ["Q0 Ml W1", "Q0 Ml W1"], "1111"),
    (6, ["Q0 Ml W1", "Q0 Mr W0"], "0000"),
    (7, ["Q0 Ml W1", "Q0 Mr W1"], "1111"),
    (8, ["Q0 Mr W0", "Q0 Ml W0"], "0000"),
    (9, ["Q0 Mr W0", "Q0 Ml W1"], "1111"),
    (10, ["Q0 Mr W0", "Q0 Mr W0"], "0000"),
    (11, ["Q0 Mr W0", "Q0 Mr W1"], "1111"),
    (12, ["Q0 Mr W1", "Q0 Ml W0"], "0000"),
    (13, ["Q0 Mr W1", "Q0 Ml W1"], "1111"),
    (14, ["Q0 Mr W1", "Q0 Mr W0"], "0000"),
    (15, ["Q0 Mr W1", "Q0 Mr W1"], "1111"),
];
