use super::{Alphabet, ForbiddenSet};
use crate::error::{Error, Result};

/// Parses the line-oriented forbidden-set format:
///
/// ```text
/// # comment
/// alphabet: 0 1
/// 00
/// 1101
/// 111
/// ```
///
/// Blank lines and lines starting with `#` are skipped. The first remaining
/// line declares the alphabet; each further line is one forbidden word.
pub fn parse_forbidden_set(input: &str) -> Result<ForbiddenSet> {
    let mut alphabet: Option<Alphabet> = None;
    let mut words = Vec::new();
    for (idx, raw) in input.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |message: String| Error::Parse {
            line: line_no,
            message,
        };
        match &alphabet {
            None => {
                let rest = line
                    .strip_prefix("alphabet:")
                    .ok_or_else(|| err("expected `alphabet: <symbols>`".into()))?;
                let parsed = Alphabet::new(rest.split_whitespace()).map_err(|e| match e {
                    Error::Parse { message, .. } => err(message),
                    other => err(other.to_string()),
                })?;
                alphabet = Some(parsed);
            }
            Some(a) => {
                let word = a.parse_word(line).map_err(|e| err(e.to_string()))?;
                words.push(word);
            }
        }
    }
    let alphabet = alphabet.ok_or(Error::Parse {
        line: 0,
        message: "missing alphabet declaration".into(),
    })?;
    ForbiddenSet::new(alphabet, words)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_compact_format() {
        let f = parse_forbidden_set("# three words\nalphabet: 0 1\n00\n\n1101\n111\n").unwrap();
        assert_eq!(f.len(), 3);
        assert_eq!(f.max_len(), 4);
        assert_eq!(parse_forbidden_set(&f.to_text()).unwrap(), f);
    }

    #[test]
    fn parses_multi_character_symbols() {
        let f = parse_forbidden_set("alphabet: lo hi mid\nhi hi\nlo mid lo\n").unwrap();
        assert_eq!(f.alphabet().len(), 3);
        let lens: Vec<usize> = f.words().iter().map(|w| w.len()).collect();
        assert_eq!(lens, [3, 2]);
        assert_eq!(parse_forbidden_set(&f.to_text()).unwrap(), f);
    }

    #[test]
    fn reports_line_numbers() {
        let err = parse_forbidden_set("alphabet: a b\nab\nac\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err:?}");
        let err = parse_forbidden_set("ab\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
        let err = parse_forbidden_set("# only comments\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 0, .. }));
    }

    #[test]
    fn semantic_errors_pass_through() {
        assert_eq!(
            parse_forbidden_set("alphabet: a b\n").unwrap_err(),
            Error::EmptySet
        );
        assert!(matches!(
            parse_forbidden_set("alphabet: a b\nab\nb\n").unwrap_err(),
            Error::RedundantWord { .. }
        ));
        assert_eq!(
            parse_forbidden_set("alphabet: a a\nab\n").unwrap_err(),
            Error::Parse {
                line: 1,
                message: "duplicate symbol `a` in alphabet".into()
            }
        );
    }
}
