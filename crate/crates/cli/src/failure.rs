use std::fmt;

/// Process exit codes. These are a stable contract.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Usage = 2,
    Numeric = 3,
    Io = 4,
}

#[derive(Debug)]
pub struct Failure {
    pub kind: Kind,
    pub error: anyhow::Error,
}

pub type CliResult<T> = Result<T, Failure>;

impl Failure {
    pub fn new(kind: Kind, error: impl Into<anyhow::Error>) -> Self {
        Self { kind, error: error.into() }
    }

    pub fn usage(msg: impl fmt::Display) -> Self {
        Self::new(Kind::Usage, anyhow::anyhow!("{msg}"))
    }

    pub fn io(msg: impl fmt::Display) -> Self {
        Self::new(Kind::Io, anyhow::anyhow!("{msg}"))
    }

    pub fn code(&self) -> i32 {
        self.kind as i32
    }

    pub fn context(self, ctx: impl fmt::Display + Send + Sync + 'static) -> Self {
        Self { kind: self.kind, error: self.error.context(ctx) }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#}", self.error)
    }
}

fn kind_of(e: &sgfrac::Error) -> Kind {
    use sgfrac::Error::*;
    match e {
        Io(_) | BadMagic | SchemaVersion { .. } | Checksum(_) | Malformed(_) => Kind::Io,
        LengthMismatch { .. } | GridMismatch { .. } | QuadTooLarge { .. } => Kind::Usage,
        Domain { .. } | NonConvergence { .. } | SubdivisionBudget { .. } => Kind::Numeric,
    }
}

impl From<sgfrac::Error> for Failure {
    fn from(e: sgfrac::Error) -> Self {
        Self::new(kind_of(&e), e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Self::new(Kind::Io, e)
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Self::new(Kind::Io, e)
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Self::new(Kind::Io, e)
    }
}

/// For values taken straight from flags: a domain error there is the
/// user's input, not a numerical breakdown.
pub fn param<T>(r: sgfrac::Result<T>) -> CliResult<T> {
    r.map_err(|e| match e {
        sgfrac::Error::Domain { .. } => Failure::new(Kind::Usage, e),
        e => e.into(),
    })
}
