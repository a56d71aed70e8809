pub mod ca;
pub mod cli;
pub mod debruijn;
pub mod locality;
pub mod oracle;
pub mod quantum;
pub mod report;
