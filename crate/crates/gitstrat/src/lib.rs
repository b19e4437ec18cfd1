//! Standard-library companion of `gitstrat-core`: file formats, the shipped
//! tables, parallel enumeration and the command line tool.

pub mod cli;
pub mod data;
pub mod enumerate;
pub mod expr;
pub mod model;
pub mod report;
pub mod verify;
