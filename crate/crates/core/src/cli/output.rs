use std::io::{self, Write};

use serde_json::ser::{CompactFormatter, Formatter};
use serde_json::{json, Value};

use crate::complex::Complex;
use crate::error::Error;

/// Compact JSON whose floats always carry 17 significant digits.
struct SciFormatter;

impl Formatter for SciFormatter {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        if value.is_finite() {
            write!(writer, "{value:.16e}")
        } else {
            // serde_json never hands us these, but stay valid JSON regardless
            CompactFormatter.write_null(writer)
        }
    }
}

pub fn write_json(out: &mut dyn Write, value: &Value) -> io::Result<()> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, SciFormatter);
    serde::Serialize::serialize(value, &mut ser).map_err(io::Error::other)?;
    out.write_all(&buf)?;
    out.write_all(b"\n")
}

pub fn complex(z: Complex) -> Value {
    json!({ "re": z.re, "im": z.im })
}

pub fn complex_with_abs(z: Complex) -> Value {
    json!({ "re": z.re, "im": z.im, "abs": z.norm() })
}

/// CSV number with 12 significant digits.
pub fn csv_num(v: f64) -> String {
    format!("{v:.11e}")
}

pub fn error_object(err: &Error) -> Value {
    json!({ "error": err.code(), "message": err.to_string() })
}
