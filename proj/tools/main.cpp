#include <cstdio>

int main() {
    std::puts("rhosharp 0.1.0");
    return 0;
}
