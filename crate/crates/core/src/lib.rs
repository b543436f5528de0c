//! Exact inverse Satake transforms of L-function series on spherical varieties.

pub mod cli;
pub mod cone_series;
pub mod datum_file;
pub mod group_ring;
pub mod lattice;
pub mod li_oracle;
pub mod linalg;
pub mod qlaurent;
pub mod rep_chars;
pub mod root_weyl;
pub mod spherical;
pub mod verify;
