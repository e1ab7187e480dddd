use std::fs;

use hqmm_core::config::parse_word_json;
use hqmm_core::{ComplexOperator, ObservableWord};

use crate::CliError;

/// Parses `allidentity:N`, `proj:l0,l1,...` or a path to a word file.
/// Projector labels are basis labels of the observable space or numeric
/// indices; hidden operators are the identity.
pub fn parse_word_spec(
    spec: &str,
    hidden_dim: usize,
    obs_dim: usize,
    labels: Option<&[String]>,
) -> Result<ObservableWord, CliError> {
    if let Some(n) = spec.strip_prefix("allidentity:") {
        let n: usize = n
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("bad word length in '{spec}'")))?;
        return Ok(ObservableWord::all_identity(n, hidden_dim, obs_dim));
    }
    if let Some(list) = spec.strip_prefix("proj:") {
        let ys = list
            .split(',')
            .map(|label| {
                let label = label.trim();
                let index = labels
                    .and_then(|ls| ls.iter().position(|l| l == label))
                    .or_else(|| label.parse::<usize>().ok())
                    .filter(|&k| k < obs_dim)
                    .ok_or_else(|| CliError::Usage(format!("unknown basis label '{label}'")))?;
                Ok(ComplexOperator::matrix_unit(obs_dim, index, index))
            })
            .collect::<Result<Vec<_>, CliError>>()?;
        return Ok(ObservableWord::observable(hidden_dim, &ys));
    }
    let text = fs::read_to_string(spec).map_err(|e| CliError::Io {
        path: spec.to_string(),
        source: e,
    })?;
    Ok(parse_word_json(&text, spec, hidden_dim, obs_dim)?)
}
