//! Group input: a named family `name:N`, or `N:[[a,b,c,d], ...]` with
//! generators as flat row-major 4-tuples. A leading `@` reads the text from a file.

use gammag::groups::{families, GroupModN};
use gammag::Result as GResult;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Family { name: String, n: u32 },
    Explicit { n: u32, gens: Vec<[i64; 4]> },
}

pub const FAMILIES: &[&str] = &["gamma0", "gamma1", "gamma_full", "ns", "ns_plus", "s4"];

impl GroupSpec {
    pub fn parse(text: &str) -> Result<Self, String> {
        let text = if let Some(path) = text.strip_prefix('@') {
            std::fs::read_to_string(path).map_err(|e| format!("cannot read {path}: {e}"))?
        } else {
            text.to_string()
        };
        let text: String = text.split_whitespace().collect();
        let (head, tail) = text.split_once(':').ok_or_else(|| format!("expected name:N or N:[...], got {text:?}"))?;
        if FAMILIES.contains(&head) {
            let n = tail.parse::<u32>().map_err(|_| format!("bad level {tail:?}"))?;
            if n == 0 {
                return Err("level must be positive".into());
            }
            return Ok(GroupSpec::Family { name: head.to_string(), n });
        }
        let n = head
            .parse::<u32>()
            .map_err(|_| format!("unknown family or level {head:?}; families are {}", FAMILIES.join(", ")))?;
        if n == 0 {
            return Err("level must be positive".into());
        }
        let gens: Vec<[i64; 4]> = serde_json::from_str(tail).map_err(|e| format!("bad generator list: {e}"))?;
        Ok(GroupSpec::Explicit { n, gens })
    }

    pub fn build(&self) -> GResult<GroupModN> {
        match self {
            GroupSpec::Family { name, n } => match name.as_str() {
                "gamma0" => families::gamma0(*n),
                "gamma1" => families::gamma1(*n),
                "gamma_full" => families::gamma_full(*n),
                "ns" => families::nonsplit_cartan(*n),
                "ns_plus" => families::nonsplit_cartan_plus(*n),
                "s4" => families::s4_exceptional(*n),
                _ => unreachable!("checked in parse"),
            },
            GroupSpec::Explicit { n, gens } => GroupModN::generate_i64(*n, gens),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses() {
        assert_eq!(GroupSpec::parse("gamma0:11").unwrap(), GroupSpec::Family { name: "gamma0".into(), n: 11 });
        assert_eq!(
            GroupSpec::parse("8: [[7,0,0,7], [2,3,3,5]]").unwrap(),
            GroupSpec::Explicit { n: 8, gens: vec![[7, 0, 0, 7], [2, 3, 3, 5]] }
        );
        assert!(GroupSpec::parse("gamma2:5").is_err());
        assert!(GroupSpec::parse("8:[[1,2,3]]").is_err());
        assert!(GroupSpec::parse("gamma0:0").is_err());
    }
}
