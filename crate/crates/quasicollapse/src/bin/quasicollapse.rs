fn main() {
    std::process::exit(quasicollapse::experiments::run());
}
