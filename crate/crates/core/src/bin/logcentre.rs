fn main() {
    std::process::exit(logcentre::cli::main());
}
