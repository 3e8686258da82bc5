use std::fmt;
use std::str::FromStr;

use groupkit::britton::BsParams;
use groupkit::metabelian::GmnParams;

/// `BS(m,n)` or `G(m,n)`, with the family's constraints checked on parse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    Bs(BsParams),
    G(GmnParams),
}

impl GroupSpec {
    pub fn bs(&self) -> Result<&BsParams, String> {
        match self {
            GroupSpec::Bs(p) => Ok(p),
            GroupSpec::G(p) => Err(format!("expected a group BS(m,n), got {p}")),
        }
    }

    pub fn g(&self) -> Result<&GmnParams, String> {
        match self {
            GroupSpec::G(p) => Ok(p),
            GroupSpec::Bs(p) => Err(format!("expected a group G(m,n), got {p}")),
        }
    }
}

impl FromStr for GroupSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let t = s.trim();
        if t.starts_with("BS(") {
            t.parse().map(GroupSpec::Bs).map_err(|e| e.to_string())
        } else if t.starts_with("G(") {
            t.parse().map(GroupSpec::G).map_err(|e| e.to_string())
        } else {
            Err(format!("`{s}` is neither BS(m,n) nor G(m,n)"))
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Bs(p) => p.fmt(f),
            GroupSpec::G(p) => p.fmt(f),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_both_families() {
        assert_eq!("BS(2,-3)".parse::<GroupSpec>().unwrap().to_string(), "BS(2,-3)");
        assert_eq!(" G( 2 , 3 ) ".parse::<GroupSpec>().unwrap().to_string(), "G(2,3)");
        assert!("G(6,2)".parse::<GroupSpec>().is_err());
        assert!("BS(0,2)".parse::<GroupSpec>().is_err());
        assert!("H(1,2)".parse::<GroupSpec>().is_err());
    }
}
