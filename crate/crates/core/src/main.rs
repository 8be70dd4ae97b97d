fn main() {
    std::process::exit(semiglue::cli::main());
}
