fn main() {
    std::process::exit(modfour::cli::main());
}
