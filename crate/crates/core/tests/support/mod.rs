pub mod exhaustive;
pub mod oracle;
pub mod random;
pub mod s6;
