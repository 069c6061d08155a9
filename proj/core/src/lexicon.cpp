#include "docpipe/lexicon.hpp"

#include "docpipe/textutil.hpp"

namespace docpipe::lexicon {

namespace {

constexpr const char* kSurnameText =
    "王李张刘陈杨黄赵吴周徐孙马朱胡郭何罗高林"
    "郑梁谢宋唐许韩冯邓曹彭曾肖田董袁潘蒋蔡余"
    "杜叶程苏魏吕丁任卢姚沈钟姜崔谭陆范汪廖石"
    "金韦贾夏付方邹熊白孟秦邱侯江尹薛闫段雷龙"
    "黎史陶贺毛郝顾龚邵万钱严覃武戴莫孔向汤温";

constexpr const char* kCompoundSurnames[] = {"欧阳", "司马", "诸葛", "上官"};

constexpr const char* kGivenText =
    "伟刚勇毅俊峰强军平保"
    "东文辉力明永健世广志"
    "义兴良海山仁波宁贵福"
    "生龙元全国胜学祥才发"
    "武新利清飞彬富顺信子"
    "杰涛昌成康星光天达安"
    "岩中茂进林有坚和彪博"
    "诚先敬震振壮会思群豪"
    "心邦承乐绍功松善厚庆"
    "磊民友裕河哲江超浩亮"
    "政谦亨奇固之轮翰朗伯"
    "宏言若鸣朋斌梁栋维启"
    "克伦翔旭鹏泽晨辰士以"
    "建家致树炎德行时泰盛"
    "雄琛钧冠策腾楠榕风航"
    "弘秀娟英华慧巧美娜静"
    "淑惠珠翠雅芝玉萍红娥"
    "玲芬芳燕彩春菊兰凤洁"
    "梅琳素云莲真环雪荣爱"
    "妹霞香月莺媛艳瑞凡佳"
    "嘉琼勤珍贞莉桂娣璧纨"
    "璐娅琦晶妍茜秋珊莎锦"
    "黛青倩婷姣婉娴瑾颖露"
    "瑶怡婵雁蓓仪荷丹蓉曼"
    "眉君琴蕊薇菁梦岚苑婕"
    "馨瑗琰韵融园艺咏卿聪"
    "澜纯毓悦昭冰爽琬茗羽"
    "希欣飘育滢馥筠柔竹霭"
    "凝晓欢霄枫芸菲寒伊亚"
    "宜可姬舒影荔枝丝妮依";

std::vector<std::string> split_chars(const char* text) {
    std::vector<std::string> out;
    std::string_view view(text);
    std::size_t pos = 0;
    while (pos < view.size()) {
        const std::size_t start = pos;
        decode_utf8(view, pos);
        out.emplace_back(view.substr(start, pos - start));
    }
    return out;
}

}  // namespace

const std::vector<std::string>& surnames() {
    static const std::vector<std::string> list = [] {
        auto singles = split_chars(kSurnameText);
        for (const char* compound : kCompoundSurnames)
            singles.emplace_back(compound);
        return singles;
    }();
    return list;
}

const std::vector<std::string>& given_name_chars() {
    static const std::vector<std::string> list = split_chars(kGivenText);
    return list;
}

const std::vector<std::string>& region_codes() {
    static const std::vector<std::string> list = {
        "110101", "110105", "110108", "120101", "130102", "140105", "150102",
        "210102", "220104", "230103", "310101", "310104", "310115", "320102",
        "320505", "330102", "330106", "340111", "350102", "360103", "370102",
        "370202", "410102", "420102", "420106", "430102", "440103", "440106",
        "440304", "440305", "450103", "460105", "500103", "510104", "510107",
        "520102", "530102", "540102", "610102", "620102", "630102", "640104",
        "650102",
    };
    return list;
}

}  // namespace docpipe::lexicon
