// placeholder; full CLI lands with the harness module
int main() { return 1; }
