//! Degree selections such as `3`, `0..2` (both ends included) or `0,2,5`.

/// Largest degree accepted by a selection.
pub const MAX_DEGREE: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RangeError {
    #[error("empty degree selection")]
    Empty,
    #[error("`{0}` is not a non-negative integer")]
    NotANumber(String),
    #[error("range `{0}` has its start after its end")]
    Reversed(String),
    #[error("degree {0} exceeds {MAX_DEGREE}")]
    TooLarge(usize),
}

fn number(s: &str) -> Result<usize, RangeError> {
    let t = s.trim();
    if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
        return Err(RangeError::NotANumber(s.to_string()));
    }
    let v: usize = t.parse().map_err(|_| RangeError::NotANumber(s.to_string()))?;
    if v > MAX_DEGREE {
        return Err(RangeError::TooLarge(v));
    }
    Ok(v)
}

/// Sorted, duplicate-free degrees.
pub fn parse_degrees(s: &str) -> Result<Vec<usize>, RangeError> {
    if s.trim().is_empty() {
        return Err(RangeError::Empty);
    }
    let mut out = Vec::new();
    for part in s.split(',') {
        if let Some((a, b)) = part.split_once("..") {
            let b = b.strip_prefix('=').unwrap_or(b);
            let (lo, hi) = (number(a)?, number(b)?);
            if lo > hi {
                return Err(RangeError::Reversed(part.to_string()));
            }
            out.extend(lo..=hi);
        } else {
            out.push(number(part)?);
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}
