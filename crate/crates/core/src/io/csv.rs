use crate::scalar::Real;

/// Fixed decimal notation with 12 significant digits; scientific when the exponent is far from zero.
pub fn format_sig<T: Real>(x: T) -> String {
    let x = x.as_f64();
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{:.11e}", x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-6..=15).contains(&exp) {
        return sci;
    }
    let decimals = (11 - exp).max(0) as usize;
    // The mantissa already carries the rounding, so shifting its digits is exact.
    let negative = mantissa.starts_with('-');
    let digits: String = mantissa.chars().filter(|c| c.is_ascii_digit()).collect();
    let point = 1 + exp;
    let mut s = String::new();
    if negative {
        s.push('-');
    }
    if point <= 0 {
        s.push_str("0.");
        s.push_str(&"0".repeat((-point) as usize));
        s.push_str(&digits);
    } else if point as usize >= digits.len() {
        s.push_str(&digits);
        s.push_str(&"0".repeat(point as usize - digits.len()));
    } else {
        s.push_str(&digits[..point as usize]);
        s.push('.');
        s.push_str(&digits[point as usize..]);
    }
    debug_assert_eq!(s.split_once('.').map_or(0, |(_, f)| f.len()), decimals);
    s
}

/// Accumulates a CSV document with a fixed header.
#[derive(Debug, Clone)]
pub struct CsvTable {
    width: usize,
    text: String,
}

impl CsvTable {
    pub fn new(header: &[&str]) -> Self {
        Self { width: header.len(), text: format!("{}\n", header.join(",")) }
    }

    pub fn row(&mut self, cells: &[String]) {
        assert_eq!(cells.len(), self.width, "row width must match header");
        let escaped: Vec<String> = cells
            .iter()
            .map(|c| if c.contains([',', '"', '\n']) { format!("\"{}\"", c.replace('"', "\"\"")) } else { c.clone() })
            .collect();
        self.text.push_str(&escaped.join(","));
        self.text.push('\n');
    }

    pub fn finish(self) -> String {
        self.text
    }
}
