use std::path::Path;

use dehnkit::families::{self, FamilyError, Presentation};
use dehnkit::words::Word;
use serde::de::DeserializeOwned;

use crate::args::{PresentationArgs, WordArgs};
use crate::error::CliError;

fn family_err(e: FamilyError) -> CliError {
    CliError::usage(e.to_string())
}

/// Reads and parses a JSON file, reporting the line and column of any error.
pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))
}

pub fn presentation_by_name(family: &str, n: u32) -> Result<Presentation, CliError> {
    match family {
        "G" => families::g(n),
        "P" => families::p(n),
        "Q" => families::q(n),
        "T" => families::t(n),
        other => {
            return Err(CliError::usage(format!(
                "unknown family `{other}` (expected G, P, Q or T)"
            )))
        }
    }
    .map_err(family_err)
}

pub fn presentation(args: &PresentationArgs) -> Result<Presentation, CliError> {
    match (&args.presentation, &args.family, args.n) {
        (Some(path), _, _) => read_json(path),
        (None, Some(family), Some(n)) => presentation_by_name(family, n),
        (None, Some(_), None) => Err(CliError::usage("--family needs --n")),
        (None, None, _) => Err(CliError::usage(
            "give --family and --n, or --presentation FILE",
        )),
    }
}

fn parse_u32(s: &str, what: &str) -> Result<u32, CliError> {
    s.parse()
        .map_err(|_| CliError::usage(format!("bad {what} `{s}` in word shorthand")))
}

/// `w<m>`, `v<n>`, `g:<n>:<k>` or an inline JSON array.
pub fn parse_word(spec: &str) -> Result<Word, CliError> {
    let spec = spec.trim();
    if spec.starts_with('[') {
        return serde_json::from_str(spec)
            .map_err(|e| CliError::usage(format!("word `{spec}`: {e}")));
    }
    if let Some(rest) = spec.strip_prefix("g:") {
        let parts: Vec<&str> = rest.split(':').collect();
        if parts.len() != 2 {
            return Err(CliError::usage(format!(
                "shorthand `{spec}` should be g:<n>:<k>"
            )));
        }
        let n = parse_u32(parts[0], "n")?;
        let k = parse_u32(parts[1], "k")?;
        if k == 0 {
            return Err(CliError::usage("g:<n>:<k> needs k >= 1"));
        }
        return families::g_word(n, k).map_err(family_err);
    }
    if let Some(m) = spec.strip_prefix('w') {
        return Ok(families::w_word(parse_u32(m, "m")?));
    }
    if let Some(n) = spec.strip_prefix('v') {
        return families::v_word(parse_u32(n, "n")?).map_err(family_err);
    }
    Err(CliError::usage(format!(
        "cannot read word `{spec}`: use a JSON array, w<m>, v<n> or g:<n>:<k>"
    )))
}

pub fn word(args: &WordArgs) -> Result<Word, CliError> {
    match (&args.word, &args.word_file) {
        (Some(spec), _) => parse_word(spec),
        (None, Some(path)) => read_json(path),
        (None, None) => Err(CliError::usage("give --word or --word-file")),
    }
}

/// Parses `a..b` (inclusive) or a single value.
pub fn parse_range(spec: &str) -> Result<Vec<u32>, CliError> {
    let bad = || {
        CliError::usage(format!(
            "bad range `{spec}`: expected a..b or a single value"
        ))
    };
    match spec.split_once("..") {
        Some((a, b)) => {
            let a: u32 = a.trim().parse().map_err(|_| bad())?;
            let b: u32 = b.trim().parse().map_err(|_| bad())?;
            Ok((a..=b).collect())
        }
        None if spec.trim().is_empty() => Ok(Vec::new()),
        None => Ok(vec![spec.trim().parse().map_err(|_| bad())?]),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shorthand() {
        assert_eq!(parse_word("w1").unwrap(), families::w_word(1));
        assert_eq!(parse_word("v2").unwrap().len(), 12);
        assert_eq!(
            parse_word("g:3:3").unwrap(),
            families::g_word(3, 3).unwrap()
        );
        assert_eq!(
            parse_word("[2, 1, -2]").unwrap().to_signed(),
            vec![2, 1, -2]
        );
        assert!(parse_word("[0]").is_err());
        assert!(parse_word("x").is_err());
        assert!(parse_word("g:1:2").is_err());
    }

    #[test]
    fn ranges() {
        assert_eq!(parse_range("1..3").unwrap(), vec![1, 2, 3]);
        assert_eq!(parse_range("4").unwrap(), vec![4]);
        assert_eq!(parse_range("3..1").unwrap(), Vec::<u32>::new());
        assert!(parse_range("a..b").is_err());
    }
}
