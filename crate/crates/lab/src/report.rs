//! Deterministic report writers: fixed 12-significant-digit formatting so a
//! rerun with the same inputs and seed is byte-identical.

use brody_core::{Complex64, Error};
use std::fmt::Write as _;
use std::path::Path;

/// 12 significant digits, locale-free.
pub fn num(x: f64) -> String {
    if x.is_nan() {
        return "null".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "1e400" } else { "-1e400" }.into();
    }
    format!("{x:.11e}")
}

pub fn pair(z: Complex64) -> String {
    format!("[{}, {}]", num(z.re), num(z.im))
}

/// Tiny ordered-JSON builder.
pub struct JsonObject {
    buf: String,
    first: bool,
}

impl JsonObject {
    pub fn new() -> Self {
        Self {
            buf: String::from("{"),
            first: true,
        }
    }

    fn key(&mut self, key: &str) {
        if !self.first {
            self.buf.push_str(", ");
        }
        self.first = false;
        let _ = write!(self.buf, "\"{key}\": ");
    }

    pub fn field_num(mut self, key: &str, x: f64) -> Self {
        self.key(key);
        self.buf.push_str(&num(x));
        self
    }

    pub fn field_int(mut self, key: &str, x: i64) -> Self {
        self.key(key);
        let _ = write!(self.buf, "{x}");
        self
    }

    pub fn field_bool(mut self, key: &str, x: bool) -> Self {
        self.key(key);
        let _ = write!(self.buf, "{x}");
        self
    }

    pub fn field_str(mut self, key: &str, x: &str) -> Self {
        self.key(key);
        let _ = write!(self.buf, "{x:?}");
        self
    }

    pub fn field_raw(mut self, key: &str, x: &str) -> Self {
        self.key(key);
        self.buf.push_str(x);
        self
    }

    pub fn field_pair(self, key: &str, z: Complex64) -> Self {
        let p = pair(z);
        self.field_raw(key, &p)
    }

    pub fn finish(mut self) -> String {
        self.buf.push('}');
        self.buf
    }
}

impl Default for JsonObject {
    fn default() -> Self {
        Self::new()
    }
}

pub fn array<I: IntoIterator<Item = String>>(items: I) -> String {
    let mut buf = String::from("[");
    for (i, item) in items.into_iter().enumerate() {
        if i > 0 {
            buf.push_str(", ");
        }
        buf.push_str(&item);
    }
    buf.push(']');
    buf
}

/// Writes text to `out`, or to stdout when `out` is `None`.
pub fn emit(out: Option<&Path>, text: &str) -> Result<(), Error> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Error::numerical(format!("cannot write {}: {e}", path.display()))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

/// Growth table as CSV with the fixed header.
pub fn growth_csv(rows: &[brody_core::GrowthSample]) -> String {
    let mut buf = String::from("r,t_jensen,t_ahlfors,n_of_r\n");
    for s in rows {
        let _ = writeln!(
            buf,
            "{},{},{},{}",
            num(s.r),
            num(s.t_jensen),
            num(s.t_ahlfors),
            num(s.n_of_r)
        );
    }
    buf
}

/// Order/type fit as JSON with the fixed keys.
pub fn fit_json(fit: &brody_core::OrderTypeFit) -> String {
    format!(
        "{{\"order\": {}, \"type\": {}, \"window\": [{}, {}], \"rms\": {}}}",
        num(fit.order_rho),
        num(fit.type_c),
        num(fit.r_window.0),
        num(fit.r_window.1),
        num(fit.rms_residual)
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(num(core::f64::consts::PI), "3.14159265359e0");
        assert_eq!(num(-1.0 / 3.0), "-3.33333333333e-1");
        assert_eq!(num(0.0), "0.00000000000e0");
    }

    #[test]
    fn json_builder_shape() {
        let s = JsonObject::new()
            .field_num("a", 1.5)
            .field_int("b", 7)
            .field_str("c", "x")
            .finish();
        assert_eq!(s, "{\"a\": 1.50000000000e0, \"b\": 7, \"c\": \"x\"}");
        let v: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["b"], 7);
    }
}
