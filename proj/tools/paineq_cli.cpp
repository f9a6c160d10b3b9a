#include <cstdio>

int main()
{
    std::puts("paineq: placeholder");
    return 0;
}
