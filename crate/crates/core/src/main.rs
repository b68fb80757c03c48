fn main() {
    std::process::exit(genquat::cli::run(std::env::args()));
}
