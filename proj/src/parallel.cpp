#include "icn/parallel.hpp"

namespace icn {

int default_threads() noexcept
{
#ifdef ICN_HAVE_OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

} // namespace icn
