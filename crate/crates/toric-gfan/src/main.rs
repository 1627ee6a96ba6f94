fn main() {
    std::process::exit(toric_gfan::run_cli());
}
