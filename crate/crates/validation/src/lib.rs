//! Holds the `acceptance` test target, which drives the command-line
//! interface in-process and checks every criterion at its fixed tolerance.
