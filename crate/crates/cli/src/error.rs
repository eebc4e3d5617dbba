use thiserror::Error;

/// Input errors; all map to exit code 2.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Io(String),
    #[error("model file: {0}")]
    Toml(String),
    #[error("{context}: {source}")]
    Model {
        context: String,
        #[source]
        source: equichern::Error,
    },
    #[error("{0}")]
    Input(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        2
    }
}
