//! Parsing of `--ty` / `--pointed` instance specifications.

use std::fs;
use std::path::Path;

use crossbraid::cohomology::CochainFile;
use crossbraid::skeletal::FusionData;
use crossbraid::tycat::{make_ty, TyError};
use crossbraid::{AbGroup, Bicharacter, PointedCat, TyCategory};
use serde_json::{json, Value};

use crate::Failure;

pub enum Instance {
    Ty(TyCategory),
    Pointed(PointedCat),
}

impl Instance {
    pub fn fusion(&self) -> FusionData {
        match self {
            Instance::Ty(t) => t.fusion_data().clone(),
            Instance::Pointed(p) => FusionData::pointed(p.group()),
        }
    }

    pub fn describe(&self) -> Value {
        match self {
            Instance::Ty(t) => json!({
                "family": "ty",
                "group": t.group().invariant_factors(),
                "chi": t.chi(),
                "tau_sign": t.tau_sign(),
            }),
            Instance::Pointed(p) => json!({
                "family": "pointed",
                "group": p.group().invariant_factors(),
                "omega": p.omega().to_file(),
            }),
        }
    }

    pub fn title(&self) -> String {
        match self {
            Instance::Ty(t) => {
                let s = if t.tau_sign() > 0 { "+" } else { "-" };
                format!("TY({}, χ, τ={s}1/√|A|)", t.group())
            }
            Instance::Pointed(p) => format!("Vec_{}^ω", p.group()),
        }
    }
}

/// Parses `[[1/2, 0], [0, 1/4]]`: entry `r` stands for `exp(2πi r)`.
pub fn parse_turns(s: &str) -> Result<Vec<Vec<(i64, u64)>>, String> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let inner = compact
        .strip_prefix("[[")
        .and_then(|r| r.strip_suffix("]]"))
        .ok_or_else(|| format!("malformed matrix {s:?}: expected [[r11,r12,..],[r21,..],..]"))?;
    inner
        .split("],[")
        .map(|row| row.split(',').map(|e| parse_turn(e).ok_or_else(|| format!("malformed entry {e:?} in {s:?}"))).collect())
        .collect()
}

fn parse_turn(e: &str) -> Option<(i64, u64)> {
    match e.split_once('/') {
        Some((n, d)) => {
            let d: u64 = d.parse().ok()?;
            (d > 0).then_some(())?;
            Some((n.parse().ok()?, d))
        }
        None => Some((e.parse().ok()?, 1)),
    }
}

pub fn parse_tau(s: &str) -> Result<i8, String> {
    match s {
        "+" | "+1" | "1" => Ok(1),
        "-" | "-1" => Ok(-1),
        _ => Err(format!("τ sign must be + or -, got {s:?}")),
    }
}

pub fn ty(group: &str, chi: &str, tau: &str) -> Result<TyCategory, Failure> {
    let group = AbGroup::parse(group).map_err(Failure::input)?;
    let turns = parse_turns(chi).map_err(Failure::Input)?;
    if turns.len() != group.rank() || turns.iter().any(|r| r.len() != group.rank()) {
        return Err(Failure::Input(format!("χ must be a {0}×{0} matrix for {group}", group.rank())));
    }
    let chi = Bicharacter::from_turns(&group, &turns).map_err(Failure::input)?;
    let sign = parse_tau(tau).map_err(Failure::Input)?;
    make_ty(&chi, sign).map_err(|e: TyError| Failure::input(e))
}

pub fn pointed(group: &str, omega: &Path) -> Result<PointedCat, Failure> {
    let group = AbGroup::parse(group).map_err(Failure::input)?;
    let text = fs::read_to_string(omega).map_err(|e| Failure::Input(format!("cannot read {}: {e}", omega.display())))?;
    let file: CochainFile =
        serde_json::from_str(&text).map_err(|e| Failure::Input(format!("malformed ω-file {}: {e}", omega.display())))?;
    if file.degree != 3 {
        return Err(Failure::Input(format!("ω must be a 3-cochain, the file has degree {}", file.degree)));
    }
    let file_group = AbGroup::new(file.group.clone()).map_err(Failure::input)?;
    if file_group != group {
        return Err(Failure::Input(format!("ω-file is over {file_group}, but --group is {group}")));
    }
    PointedCat::from_file(&file).map_err(Failure::input)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn turns() {
        assert_eq!(parse_turns("[[1/2]]").unwrap(), vec![vec![(1, 2)]]);
        assert_eq!(parse_turns("[[1/2, 0], [0, -1/4]]").unwrap(), vec![vec![(1, 2), (0, 1)], vec![(0, 1), (-1, 4)]]);
        assert!(parse_turns("[1/2]").is_err());
        assert!(parse_turns("[[1/0]]").is_err());
        assert!(parse_turns("[[x]]").is_err());
    }

    #[test]
    fn tau() {
        assert_eq!(parse_tau("+"), Ok(1));
        assert_eq!(parse_tau("-1"), Ok(-1));
        assert!(parse_tau("0").is_err());
    }
}
