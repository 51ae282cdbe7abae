use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

/// Inclusive integer range written `a`, `a..b` or `a..=b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntRange {
    pub start: i64,
    pub end: i64,
}

impl IntRange {
    pub fn new(start: i64, end: i64) -> Self {
        IntRange { start, end }
    }

    pub fn iter(&self) -> RangeInclusive<i64> {
        self.start..=self.end
    }

    /// The same range as u32, rejecting negative bounds.
    pub fn to_u32(&self, flag: &str) -> Result<RangeInclusive<u32>, String> {
        let conv = |v: i64| {
            u32::try_from(v).map_err(|_| format!("--{flag} must be non-negative, got {v}"))
        };
        Ok(conv(self.start)?..=conv(self.end)?)
    }
}

impl FromStr for IntRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parse = |part: &str| {
            part.trim()
                .parse::<i64>()
                .map_err(|_| format!("`{s}` is not an integer or a range a..b"))
        };
        let (start, end) = match s.split_once("..") {
            Some((a, b)) => (parse(a)?, parse(b.strip_prefix('=').unwrap_or(b))?),
            None => {
                let v = parse(s)?;
                (v, v)
            }
        };
        if start > end {
            return Err(format!("empty range `{s}`"));
        }
        Ok(IntRange { start, end })
    }
}

impl fmt::Display for IntRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.start == self.end {
            write!(f, "{}", self.start)
        } else {
            write!(f, "{}..{}", self.start, self.end)
        }
    }
}
