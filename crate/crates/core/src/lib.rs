pub mod chevalley;
pub mod cli;
pub mod exactlin;
pub mod fingerprint;
pub mod nilalg;
pub mod rootsys;
