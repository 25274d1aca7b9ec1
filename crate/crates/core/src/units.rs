//! Unit conversions used at configuration boundaries.

/// Decibels to a linear ratio.
pub fn db_to_linear(db: f64) -> f64 {
    libm::pow(10.0, db / 10.0)
}

/// Linear ratio to decibels.
pub fn linear_to_db(x: f64) -> f64 {
    10.0 * libm::log10(x)
}

/// dBm to watts.
pub fn dbm_to_watts(dbm: f64) -> f64 {
    1e-3 * db_to_linear(dbm)
}

/// Watts to dBm.
pub fn watts_to_dbm(w: f64) -> f64 {
    linear_to_db(w * 1e3)
}

/// Kilometres to metres.
pub const fn km(x: f64) -> f64 {
    x * 1e3
}

/// Per-cubic-kilometre intensity to per-cubic-metre.
pub const fn per_km3(x: f64) -> f64 {
    x * 1e-9
}
